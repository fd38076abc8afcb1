#pragma once

#include <string>
#include <vector>

#include "mfgas/geometry.hpp"
#include "mfgas/kernel.hpp"
#include "mfgas/potential.hpp"

namespace mfgas {

// Boundary radius of the gas for V = |x|^alpha under a short-range kernel:
//   eta_N = (log N)^{1/alpha} (1 - [n(alpha-1)/alpha^2] llN/lN
//                                - log(alpha^n L_gamma)/(alpha lN)).
// Throws ConfigurationError when N <= e (log log N undefined).
double edge_radius_riesz(int N, double alpha, int n, double l_gamma);

// Same radius with the middle coefficient -n(alpha-1) replaced by
// betaN - n(alpha-1), as required for the logarithmic kernel.
double edge_radius_log(int N, double alpha, int n, double betaN, double l_gamma);

// Volume-preserving rotation sending e_1 to upsilon, realized as a
// Householder reflection composed with a last-axis flip (determinant +1);
// the identity when upsilon = e_1, the sign upsilon when n = 1.
Vec rotate_to(const Vec& upsilon, const Vec& x);
Vec rotate_from(const Vec& upsilon, const Vec& y);  // inverse map

// Affine zoom onto the boundary point E_N = eta_N * upsilon:
//   phi(x) = E_N + alpha_N^{-1} psi(x),  alpha_N = alpha * eta_N^{alpha-1},
// with psi = rotate_to(upsilon, .).
// In these coordinates the local particle intensity approaches e^{-x_1}.
struct EdgeFrame {
  int dim = 1;
  int N = 0;
  double eta_N = 0.0;
  double alpha_N = 0.0;
  double l_gamma = 0.0;
  Vec upsilon;
  Vec E_N;

  // calibration diagnostics, see build_edge_frame
  double intensity_margin = 0.0;  // |N e^{-V(E_N)} (...) / (L alpha_N^n) - 1|
  double curvature_margin = 0.0;  // alpha_N^{-2} sup ||Hess V|| over the window
  double decay_margin = 0.0;      // 1 / (alpha_N |E_N|)
  std::vector<std::string> warnings;

  Vec psi(const Vec& x) const { return rotate_to(upsilon, x); }
  Vec psi_inv(const Vec& y) const { return rotate_from(upsilon, y); }
  Vec phi(const Vec& x) const;
  Vec phi_inv(const Vec& y) const;
};

// Validates the frame calibration numerically over the default window
// [-1, 6] x [-2, 2]^{n-1}.  A margin above 0.2 is recorded as a warning;
// above 0.6 the frame is rejected with FrameConditionError naming the
// failed condition.  The potential must be Power(alpha).
EdgeFrame build_edge_frame(const Potential& pot, KernelFamily family, int N, double betaN,
                           double l_gamma, const Vec& upsilon);

}
