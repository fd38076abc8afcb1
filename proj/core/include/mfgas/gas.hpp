#pragma once

#include <cstdint>
#include <vector>

#include "mfgas/geometry.hpp"
#include "mfgas/kernel.hpp"
#include "mfgas/potential.hpp"

namespace mfgas {

// Interacting gas H = beta * sum_{i<j} g(x_i, x_j) + sum_j V(x_j).
// beta defaults to gamma / N; beta_override pins it instead (used for
// fixed-temperature control runs).
struct GasParameters {
  InteractionKernel kernel;
  Potential potential;
  int N = 0;
  double gamma = 0.0;
  double beta_override = -1.0;  // < 0: use gamma / N

  int dim() const { return kernel.dim(); }
  double beta() const {
    if (beta_override >= 0.0) return beta_override;
    return N > 0 ? gamma / static_cast<double>(N) : 0.0;
  }
};

// Positions stored flat (stride = dim), plus incrementally maintained
// per-particle interaction fields f_j = sum_{i != j} g(x_i, x_j) and the
// cached total energy.
struct ParticleConfiguration {
  int dim = 1;
  int N = 0;
  std::vector<double> positions;
  std::vector<double> field;
  double cached_energy = 0.0;

  Vec at(int j) const {
    Vec v = Vec::zero(dim);
    for (int d = 0; d < dim; ++d) v[d] = positions[static_cast<std::size_t>(j * dim + d)];
    return v;
  }
  void set(int j, const Vec& x) {
    for (int d = 0; d < dim; ++d) positions[static_cast<std::size_t>(j * dim + d)] = x[d];
  }
};

// Full O(N^2) energy of a position list.
double total_energy(const GasParameters& params, const std::vector<double>& positions);

// Builds a configuration with fields and cached energy from raw positions.
ParticleConfiguration make_configuration(const GasParameters& params,
                                         std::vector<double> positions);

// Refreshes field and cached energy in place (O(N^2)).
void refresh_caches(const GasParameters& params, ParticleConfiguration& config);

// H(x with particle j at proposal) - H(x), O(N) using the cached field.
// Returns +inf when the proposal lands on another particle.
double delta_energy(const GasParameters& params, const ParticleConfiguration& config, int j,
                    const Vec& proposal);

// Applies an accepted move of particle j, updating fields and cache in O(N).
void apply_move(const GasParameters& params, ParticleConfiguration& config, int j,
                const Vec& proposal);

double accept_probability(double delta);

}
