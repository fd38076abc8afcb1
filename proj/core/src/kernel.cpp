#include "mfgas/kernel.hpp"

#include <cmath>

#include "mfgas/errors.hpp"

namespace mfgas {

std::string to_string(KernelFamily f) {
  return f == KernelFamily::Riesz ? "riesz" : "log";
}

InteractionKernel InteractionKernel::riesz(double s, int dim) {
  if (dim < 1 || dim > 3) throw DimensionError("riesz kernel: dimension must be 1, 2 or 3");
  if (!(s > 0.0) || !(s < static_cast<double>(dim)))
    throw ConfigurationError("riesz kernel: s must be in (0, n), s must be < n");
  return InteractionKernel(KernelFamily::Riesz, s, dim);
}

InteractionKernel InteractionKernel::log_kernel(int dim) {
  if (dim < 1 || dim > 3) throw DimensionError("log kernel: dimension must be 1, 2 or 3");
  return InteractionKernel(KernelFamily::Log, 0.0, dim);
}

double InteractionKernel::eval_r(double r) const {
  if (r < 0.0) throw std::invalid_argument("eval_r: negative radius");
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  if (family_ == KernelFamily::Riesz) return std::pow(r, -s_);
  return -std::log(r);
}

double InteractionKernel::eval(const Vec& u, const Vec& x) const {
  if (u.n != dim_ || x.n != dim_)
    throw DimensionError("kernel eval: point dimension does not match kernel");
  return eval_r(dist(u, x));
}

SplitKernelValue InteractionKernel::eval_split_r(double r, double level) const {
  if (!(level > 0.0)) throw std::invalid_argument("eval_split: truncation level must be > 0");
  double g = eval_r(r);
  double low = std::min(g, level);
  return SplitKernelValue{low, g - low};
}

SplitKernelValue InteractionKernel::eval_split(const Vec& u, const Vec& x, double level) const {
  if (u.n != dim_ || x.n != dim_)
    throw DimensionError("kernel eval_split: point dimension does not match kernel");
  return eval_split_r(dist(u, x), level);
}

bool InteractionKernel::has_1d_primitives() const {
  return family_ == KernelFamily::Log || s_ < 1.0;
}

double InteractionKernel::prim1(double t) const {
  double a = std::fabs(t);
  double sign = t < 0.0 ? -1.0 : 1.0;
  if (a == 0.0) return 0.0;
  if (family_ == KernelFamily::Riesz) {
    if (s_ >= 1.0) throw ConfigurationError("prim1: Riesz kernel not 1D-integrable for s >= 1");
    return sign * std::pow(a, 1.0 - s_) / (1.0 - s_);
  }
  // int_0^t log(1/r) dr = t - t log t
  return sign * (a - a * std::log(a));
}

double InteractionKernel::prim2(double t) const {
  double a = std::fabs(t);
  if (a == 0.0) return 0.0;
  if (family_ == KernelFamily::Riesz) {
    if (s_ >= 1.0) throw ConfigurationError("prim2: Riesz kernel not 1D-integrable for s >= 1");
    return std::pow(a, 2.0 - s_) / ((1.0 - s_) * (2.0 - s_));
  }
  return 0.75 * a * a - 0.5 * a * a * std::log(a);
}

double theta_tilt(const Vec& x) {
  return std::log1p(x.norm());
}

}
