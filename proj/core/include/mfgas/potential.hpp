#pragma once

#include <string>
#include <vector>

#include "mfgas/geometry.hpp"

namespace mfgas {

enum class PotentialFamily { Power, Gaussian, Tabulated };

std::string to_string(PotentialFamily f);

// Confining potential V >= 0 on R^n.
//
// Power:     V(x) = |x|^alpha, alpha > 0.
// Gaussian:  V(x) = |x|^2 / 2.
// Tabulated: linear interpolation of sampled values, keyed by the
//            coordinate in 1D and by the radius in 2D/3D; +inf outside
//            the table.  Values are shifted so min V = 0.
class Potential {
 public:
  static Potential power(double alpha, int dim);
  static Potential gaussian(int dim);
  static Potential tabulated(std::vector<double> xs, std::vector<double> values, int dim);

  PotentialFamily family() const { return family_; }
  int dim() const { return dim_; }
  double alpha() const { return alpha_; }

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  // Hilbert-Schmidt norm of the Hessian.
  double hessian_norm(const Vec& x) const;

  // V(x) - kappa * log(1 + |x|)
  double tilted_value(double kappa, const Vec& x) const;

  // Radial profile for rotation-invariant use (Power/Gaussian any dim,
  // Tabulated in dims >= 2).  In 1D, Tabulated potentials may be
  // asymmetric and this accessor refuses them.
  double radial_value(double r) const;

  bool grows_at_infinity() const;

  const std::vector<double>& table_xs() const { return xs_; }
  const std::vector<double>& table_values() const { return vs_; }

 private:
  Potential(PotentialFamily f, double alpha, int dim) : family_(f), alpha_(alpha), dim_(dim) {}
  double table_interp(double t) const;
  double table_step() const;

  PotentialFamily family_;
  double alpha_ = 0.0;
  int dim_;
  std::vector<double> xs_, vs_;
};

}
