#pragma once

#include <limits>
#include <string>

#include "mfgas/geometry.hpp"

namespace mfgas {

enum class KernelFamily { Riesz, Log };

std::string to_string(KernelFamily f);

struct SplitKernelValue {
  double low;   // min(g, level), bounded above by level
  double high;  // g - low, nonnegative
};

// Pair interaction g on R^n.
//
// Riesz: g(u, x) = |x - u|^{-s}, 0 < s < n.
// Log:   g(u, x) = log 1/|x - u|.  Unbounded below at large separation;
//        the tilt theta(x) = log(1 + |x|) compensates, see theta_tilt.
class InteractionKernel {
 public:
  static InteractionKernel riesz(double s, int dim);
  static InteractionKernel log_kernel(int dim);

  KernelFamily family() const { return family_; }
  int dim() const { return dim_; }
  double s() const { return s_; }

  // Radial profile g(r).  r = 0 gives +inf.
  double eval_r(double r) const;
  double eval(const Vec& u, const Vec& x) const;

  // g = low + high at truncation level k > 0, low = min(g, k).
  SplitKernelValue eval_split_r(double r, double level) const;
  SplitKernelValue eval_split(const Vec& u, const Vec& x, double level) const;

  // One-dimensional antiderivatives of the radial profile, used by the
  // grid quadrature.  prim1 is the odd extension of int_0^t g(r) dr and
  // prim2 its even second antiderivative, so exact cell averages come out
  // of finite differences.  Only defined when g is integrable at 0 in 1D
  // (always for Log, s < 1 for Riesz).
  double prim1(double t) const;
  double prim2(double t) const;
  bool has_1d_primitives() const;

 private:
  InteractionKernel(KernelFamily f, double s, int dim) : family_(f), s_(s), dim_(dim) {}
  KernelFamily family_;
  double s_;
  int dim_;
};

// Tilt theta(x) = log(1 + |x|).  For the Log kernel,
// g(u, x) + theta(u) + theta(x) >= 0 for all u, x.
double theta_tilt(const Vec& x);

}
