#pragma once

#include <vector>

#include "mfgas/grid.hpp"
#include "mfgas/kernel.hpp"
#include "mfgas/potential.hpp"

namespace mfgas {

// Precomputed cell-average kernel tables for a uniform Line grid.
// point_avg[d]: average of g(x_i, z) over z in a cell whose center is
//               d cells away (exact, via first antiderivative).
// pair_avg[d]:  average of g over two cells d apart (exact, via second
//               antiderivative); d = 0 is the in-cell self average.
struct KernelTables {
  double h = 0.0;
  std::vector<double> point_avg;
  std::vector<double> pair_avg;
};

KernelTables build_kernel_tables(const InteractionKernel& kernel, const DensityGrid& grid);

// U^mu(x) = int g(x, z) mu(dz), exact per cell for piecewise-constant
// densities on Line grids; Radial2D uses ring potentials (closed form for
// Log, angular quadrature for Riesz with s < 1).
double potential_of_measure(const InteractionKernel& kernel, const DensityGrid& mu, const Vec& x);

// U^mu at every grid node.
std::vector<double> potential_field(const InteractionKernel& kernel, const DensityGrid& mu);

// E(mu) = double integral of g against mu x mu.
double energy(const InteractionKernel& kernel, const DensityGrid& mu);

// Same quadrature applied to a signed function on the grid layout.
double energy_of_values(const InteractionKernel& kernel, const DensityGrid& layout,
                        const std::vector<double>& values);

// E(mu) with the tilted kernel g + theta(u) + theta(x) in the Log case;
// equals plain energy for Riesz.
double weighted_energy(const InteractionKernel& kernel, const DensityGrid& mu);

// KL divergence H(mu | nu) on a shared grid layout; +inf when mu loads a
// cell where nu vanishes.
double relative_entropy(const DensityGrid& mu, const DensityGrid& nu);

// Tilted reference density nu_gamma = C^{-1} e^{-(V - gamma * theta)} on
// the given layout; c_gamma receives the normalizer.
DensityGrid tilted_reference(const InteractionKernel& kernel, const Potential& pot, double gamma,
                             const DensityGrid& layout, double* c_gamma = nullptr);

// F_gamma(mu) = (gamma/2) * weighted_energy(mu) + H(mu | nu_gamma).
double free_energy(const InteractionKernel& kernel, const Potential& pot, const DensityGrid& mu,
                   double gamma);

// Half-width H such that e^{-(V - kappa*theta)} has dropped below 1e-12 of
// its maximum at |x| = H, with kappa = gamma + 1 for the Log kernel and
// kappa = 0 otherwise.
double auto_domain_halfwidth(const InteractionKernel& kernel, const Potential& pot, double gamma);

struct SolveOptions {
  int cells = 2048;
  double domain_halfwidth = 0.0;  // 0: automatic from the tilted tail rule
  double tol = 1e-9;
  int max_iter = 2000;
  double damping = 0.5;
  double boundary_eps = 1e-8;  // boundary-cell density fraction that trips the domain check
  bool track_free_energy = true;
};

struct EquilibriumSolution {
  DensityGrid density;
  std::vector<double> field;  // U^{mu_gamma} at the nodes
  double gamma = 0.0;
  double L_gamma = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double boundary_fraction = 0.0;
  std::vector<double> residual_history;
  std::vector<double> free_energy_history;
  std::vector<double> mass_history;
};

// Damped fixed-point iteration for mu = L^{-1} e^{-gamma U^mu - V}.
// Non-convergence is reported through the converged flag and histories,
// not thrown.
EquilibriumSolution solve_equilibrium(const InteractionKernel& kernel, const Potential& pot,
                                      double gamma, const SolveOptions& opts = {});

// Recomputes U from the stored density and returns
// sup_nodes |mu - L^{-1} e^{-gamma U - V}|.
double el_residual(const InteractionKernel& kernel, const Potential& pot,
                   const EquilibriumSolution& sol);

}
