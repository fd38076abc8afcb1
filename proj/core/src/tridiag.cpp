#include "mfgas/tridiag.hpp"

#include <cmath>
#include <lapacke.h>

#include "mfgas/errors.hpp"

namespace mfgas {

namespace {

void draw_matrix(int N, double beta, Rng& rng, std::vector<double>& diag,
                 std::vector<double>& sub) {
  if (N < 1) throw ConfigurationError("tridiagonal sampler: N must be >= 1");
  if (beta < 0.0) throw ConfigurationError("tridiagonal sampler: beta must be >= 0");
  diag.resize(static_cast<std::size_t>(N));
  sub.resize(static_cast<std::size_t>(N > 0 ? N - 1 : 0));
  std::normal_distribution<double> normal(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < N; ++i) diag[static_cast<std::size_t>(i)] = normal(rng);
  for (int k = 1; k < N; ++k) {
    double dof = beta * static_cast<double>(N - k);
    double chi2;
    if (dof > 0.0) {
      std::gamma_distribution<double> gamma(0.5 * dof, 2.0);
      chi2 = gamma(rng);
    } else {
      chi2 = 0.0;
    }
    sub[static_cast<std::size_t>(k - 1)] = std::sqrt(chi2) * inv_sqrt2;
  }
}

}

std::vector<double> sample_tridiagonal_gbe(int N, double beta, Rng& rng) {
  std::vector<double> diag, sub;
  draw_matrix(N, beta, rng, diag, sub);
  // eigenvalues only, Pal-Walker-Kahan QL/QR
  lapack_int info = LAPACKE_dsterf(static_cast<lapack_int>(N), diag.data(), sub.data());
  if (info != 0)
    throw EigensolveError("dsterf failed with info " + std::to_string(info));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (auto& v : diag) v *= inv_sqrt2;
  return diag;  // dsterf returns ascending order
}

double sample_tridiagonal_gbe_max(int N, double beta, Rng& rng) {
  std::vector<double> diag, sub;
  draw_matrix(N, beta, rng, diag, sub);
  if (N == 1) return diag[0] / std::sqrt(2.0);
  lapack_int m = 0, nsplit = 0;
  std::vector<double> w(static_cast<std::size_t>(N));
  std::vector<lapack_int> iblock(static_cast<std::size_t>(N)), isplit(static_cast<std::size_t>(N));
  lapack_int info = LAPACKE_dstebz('I', 'E', static_cast<lapack_int>(N), 0.0, 0.0,
                                   static_cast<lapack_int>(N), static_cast<lapack_int>(N), 0.0,
                                   diag.data(), sub.data(), &m, &nsplit, w.data(), iblock.data(),
                                   isplit.data());
  if (info != 0 || m < 1)
    throw EigensolveError("dstebz failed with info " + std::to_string(info));
  return w[0] / std::sqrt(2.0);
}

}
