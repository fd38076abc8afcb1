#include "mfgas/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfgas/errors.hpp"
#include "mfgas/kernel.hpp"

namespace mfgas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string to_string(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::Power: return "power";
    case PotentialFamily::Gaussian: return "gaussian";
    default: return "tabulated";
  }
}

Potential Potential::power(double alpha, int dim) {
  if (dim < 1 || dim > 3) throw DimensionError("power potential: dimension must be 1, 2 or 3");
  if (!(alpha > 0.0)) throw ConfigurationError("power potential: potential.alpha must be > 0");
  return Potential(PotentialFamily::Power, alpha, dim);
}

Potential Potential::gaussian(int dim) {
  if (dim < 1 || dim > 3) throw DimensionError("gaussian potential: dimension must be 1, 2 or 3");
  return Potential(PotentialFamily::Gaussian, 0.0, dim);
}

Potential Potential::tabulated(std::vector<double> xs, std::vector<double> values, int dim) {
  if (dim < 1 || dim > 3) throw DimensionError("tabulated potential: dimension must be 1, 2 or 3");
  if (xs.size() != values.size() || xs.size() < 2)
    throw ConfigurationError("tabulated potential: need matching xs/values with >= 2 entries");
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw ConfigurationError("tabulated potential: xs must be sorted");
  if (dim >= 2 && xs.front() < 0.0)
    throw ConfigurationError("tabulated potential: radial table needs xs >= 0");
  double lo = *std::min_element(values.begin(), values.end());
  for (auto& v : values) v -= lo;  // normalize so min V = 0
  Potential p(PotentialFamily::Tabulated, 0.0, dim);
  p.xs_ = std::move(xs);
  p.vs_ = std::move(values);
  return p;
}

double Potential::table_step() const {
  return (xs_.back() - xs_.front()) / static_cast<double>(xs_.size() - 1);
}

double Potential::table_interp(double t) const {
  if (t < xs_.front() || t > xs_.back()) return kInf;
  auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
  std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - xs_.begin()), xs_.size() - 1);
  if (hi == 0) hi = 1;
  std::size_t lo = hi - 1;
  double w = (t - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return vs_[lo] + w * (vs_[hi] - vs_[lo]);
}

double Potential::radial_value(double r) const {
  if (r < 0.0) throw std::invalid_argument("radial_value: negative radius");
  switch (family_) {
    case PotentialFamily::Power: return std::pow(r, alpha_);
    case PotentialFamily::Gaussian: return 0.5 * r * r;
    default:
      if (dim_ == 1)
        throw ConfigurationError("radial_value: 1D tabulated potential may be asymmetric");
      return table_interp(r);
  }
}

double Potential::value(const Vec& x) const {
  if (x.n != dim_) throw DimensionError("potential value: point dimension mismatch");
  if (family_ == PotentialFamily::Tabulated && dim_ == 1) return table_interp(x[0]);
  return radial_value(x.norm());
}

Vec Potential::gradient(const Vec& x) const {
  if (x.n != dim_) throw DimensionError("potential gradient: point dimension mismatch");
  double r = x.norm();
  switch (family_) {
    case PotentialFamily::Power: {
      if (r == 0.0) {
        if (alpha_ < 2.0)
          throw SingularPointError("power potential gradient singular at 0 for alpha < 2");
        return Vec::zero(dim_);
      }
      return x * (alpha_ * std::pow(r, alpha_ - 2.0));
    }
    case PotentialFamily::Gaussian:
      return x;
    default: {
      double h = table_step();
      if (dim_ == 1) {
        Vec g = Vec::zero(1);
        g[0] = (table_interp(x[0] + h) - table_interp(x[0] - h)) / (2.0 * h);
        return g;
      }
      if (r == 0.0) return Vec::zero(dim_);
      double rp = std::min(r + h, xs_.back());
      double rm = std::max(r - h, xs_.front());
      double d = (table_interp(rp) - table_interp(rm)) / (rp - rm);
      return x * (d / r);
    }
  }
}

double Potential::hessian_norm(const Vec& x) const {
  if (x.n != dim_) throw DimensionError("potential hessian: point dimension mismatch");
  double r = x.norm();
  double nm1 = static_cast<double>(dim_ - 1);
  switch (family_) {
    case PotentialFamily::Power: {
      if (r == 0.0) {
        if (alpha_ < 2.0)
          throw SingularPointError("power potential hessian singular at 0 for alpha < 2");
        if (alpha_ == 2.0) return 2.0 * std::sqrt(static_cast<double>(dim_));
        return 0.0;
      }
      double shape = alpha_ * std::sqrt((alpha_ - 1.0) * (alpha_ - 1.0) + nm1);
      return shape * std::pow(r, alpha_ - 2.0);
    }
    case PotentialFamily::Gaussian:
      return std::sqrt(static_cast<double>(dim_));
    default: {
      double h = table_step();
      if (dim_ == 1) {
        double t = x[0];
        return std::fabs((table_interp(t + h) - 2.0 * table_interp(t) + table_interp(t - h)) /
                         (h * h));
      }
      if (r == 0.0) return 0.0;
      double frr = (table_interp(std::min(r + h, xs_.back())) - 2.0 * table_interp(r) +
                    table_interp(std::max(r - h, xs_.front()))) /
                   (h * h);
      double fr = (table_interp(std::min(r + h, xs_.back())) -
                   table_interp(std::max(r - h, xs_.front()))) /
                  (std::min(r + h, xs_.back()) - std::max(r - h, xs_.front()));
      return std::sqrt(frr * frr + nm1 * (fr / r) * (fr / r));
    }
  }
}

double Potential::tilted_value(double kappa, const Vec& x) const {
  return value(x) - kappa * theta_tilt(x);
}

bool Potential::grows_at_infinity() const {
  return family_ != PotentialFamily::Tabulated;
}

}
