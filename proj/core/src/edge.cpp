#include "mfgas/edge.hpp"

#include <cmath>
#include <string>

#include "mfgas/errors.hpp"

namespace mfgas {

namespace {

void require_loglog(int N) {
  if (static_cast<double>(N) <= std::exp(1.0))
    throw ConfigurationError("edge radius requires N > e so that log log N is defined");
}

double radius(double lN, double middle_coeff, double alpha, int n, double l_gamma) {
  const double llN = std::log(lN);
  const double tail = std::log(std::pow(alpha, n) * l_gamma) / (alpha * lN);
  return std::pow(lN, 1.0 / alpha) *
         (1.0 + middle_coeff / (alpha * alpha) * (llN / lN) - tail);
}

}  // namespace

double edge_radius_riesz(int N, double alpha, int n, double l_gamma) {
  require_loglog(N);
  return radius(std::log(static_cast<double>(N)), -n * (alpha - 1.0), alpha, n, l_gamma);
}

double edge_radius_log(int N, double alpha, int n, double betaN, double l_gamma) {
  require_loglog(N);
  return radius(std::log(static_cast<double>(N)), betaN - n * (alpha - 1.0), alpha, n,
                l_gamma);
}

namespace {

// Householder vector for the reflection sending e_1 to upsilon; empty
// result means the rotation degenerates to the identity.
bool householder_vector(const Vec& upsilon, Vec& w) {
  const int n = upsilon.n;
  w = Vec::zero(n);
  w[0] = upsilon[0] - 1.0;
  for (int d = 1; d < n; ++d) w[d] = upsilon[d];
  const double wn = w.norm();
  if (wn < 1e-12) return false;
  for (int d = 0; d < n; ++d) w[d] /= wn;
  return true;
}

}  // namespace

Vec rotate_to(const Vec& upsilon, const Vec& x) {
  require_same_dim(x, upsilon, "rotate_to");
  const int n = upsilon.n;
  if (n == 1) return Vec::of((upsilon[0] >= 0.0 ? 1.0 : -1.0) * x[0]);
  Vec w;
  if (!householder_vector(upsilon, w)) return x;  // upsilon = e_1
  // last-axis flip D, then the reflection H; det(HD) = +1
  Vec y = x;
  y[n - 1] = -y[n - 1];
  double wy = 0.0;
  for (int d = 0; d < n; ++d) wy += w[d] * y[d];
  Vec out = Vec::zero(n);
  for (int d = 0; d < n; ++d) out[d] = y[d] - 2.0 * wy * w[d];
  return out;
}

Vec rotate_from(const Vec& upsilon, const Vec& y) {
  require_same_dim(y, upsilon, "rotate_from");
  const int n = upsilon.n;
  if (n == 1) return Vec::of((upsilon[0] >= 0.0 ? 1.0 : -1.0) * y[0]);
  Vec w;
  if (!householder_vector(upsilon, w)) return y;
  // H then D (both involutions)
  Vec z = y;
  double wy = 0.0;
  for (int d = 0; d < n; ++d) wy += w[d] * z[d];
  for (int d = 0; d < n; ++d) z[d] -= 2.0 * wy * w[d];
  z[n - 1] = -z[n - 1];
  return z;
}

Vec EdgeFrame::phi(const Vec& x) const {
  Vec r = psi(x);
  Vec out = Vec::zero(dim);
  for (int d = 0; d < dim; ++d) out[d] = E_N[d] + r[d] / alpha_N;
  return out;
}

Vec EdgeFrame::phi_inv(const Vec& y) const {
  Vec shifted = Vec::zero(dim);
  for (int d = 0; d < dim; ++d) shifted[d] = alpha_N * (y[d] - E_N[d]);
  return psi_inv(shifted);
}

EdgeFrame build_edge_frame(const Potential& pot, KernelFamily family, int N, double betaN,
                           double l_gamma, const Vec& upsilon) {
  if (pot.family() != PotentialFamily::Power)
    throw ConfigurationError("edge frame requires a power-law potential V = |x|^alpha");
  const int n = pot.dim();
  if (upsilon.n != n) throw DimensionError("upsilon dimension does not match the potential");
  const double unorm = upsilon.norm();
  if (std::abs(unorm - 1.0) > 1e-9)
    throw ConfigurationError("upsilon must be a unit vector");
  const double alpha = pot.alpha();

  EdgeFrame f;
  f.dim = n;
  f.N = N;
  f.l_gamma = l_gamma;
  f.upsilon = upsilon;
  f.eta_N = family == KernelFamily::Log ? edge_radius_log(N, alpha, n, betaN, l_gamma)
                                        : edge_radius_riesz(N, alpha, n, l_gamma);
  f.alpha_N = alpha * std::pow(f.eta_N, alpha - 1.0);
  f.E_N = Vec::zero(n);
  for (int d = 0; d < n; ++d) f.E_N[d] = f.eta_N * upsilon[d];

  // calibration of the limiting intensity at the frame origin
  const double vE = pot.value(f.E_N);
  double log_num = std::log(static_cast<double>(N)) - vE;
  if (family == KernelFamily::Log) log_num += betaN * std::log(f.E_N.norm());
  const double ratio = std::exp(log_num) / (l_gamma * std::pow(f.alpha_N, n));
  f.intensity_margin = std::abs(ratio - 1.0);

  // curvature over the default observation window [-1, 6] x [-2, 2]^{n-1}
  double sup_hess = 0.0;
  const int steps = 8;
  Vec probe = Vec::zero(n);
  const int transverse = n > 1 ? steps : 0;
  for (int i = 0; i <= steps; ++i) {
    probe[0] = -1.0 + 7.0 * i / steps;
    for (int j = 0; j <= transverse; ++j) {
      for (int d = 1; d < n; ++d) probe[d] = -2.0 + 4.0 * j / steps;
      sup_hess = std::max(sup_hess, pot.hessian_norm(f.phi(probe)));
    }
  }
  f.curvature_margin = sup_hess / (f.alpha_N * f.alpha_N);
  f.decay_margin = 1.0 / (f.alpha_N * f.E_N.norm());

  struct Check {
    const char* name;
    double value;
  } checks[] = {
      {"intensity calibration N e^{-V(E_N)} / (L alpha_N^n)", f.intensity_margin},
      {"curvature alpha_N^{-2} sup ||Hess V||", f.curvature_margin},
      {"boundary decay 1 / (alpha_N |E_N|)", f.decay_margin},
  };
  for (const auto& c : checks) {
    if (c.value > 0.6)
      throw FrameConditionError(std::string("edge frame condition failed: ") + c.name +
                                " margin " + std::to_string(c.value));
    if (c.value > 0.2)
      f.warnings.push_back(std::string("edge frame condition marginal: ") + c.name +
                           " margin " + std::to_string(c.value));
  }
  return f;
}

}
