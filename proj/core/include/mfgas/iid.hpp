#pragma once

#include <cstdint>
#include <vector>

#include "mfgas/potential.hpp"
#include "mfgas/rng.hpp"

namespace mfgas {

// Sampler for the non-interacting law mu_0 = e^{-V} / L_0.
// 1D draws go through an inverse CDF (exact for V = x^2 and V = |x|);
// 2D radial potentials use rejection from a dominating product law.
class IidSampler {
 public:
  explicit IidSampler(const Potential& pot, int grid_points = 16384);

  Vec draw(Rng& rng) const;
  // N draws, positions flat with stride dim.
  std::vector<double> draw_many(int N, Rng& rng) const;

  // acceptance fraction of the 2D rejection loop so far (1.0 in 1D)
  double rejection_efficiency() const;

 private:
  enum class Mode { Normal1D, Laplace1D, Grid1D, Product2D };
  double draw_axis(Rng& rng) const;  // proposal axis law e^{-V(|t|)/2} (2D)
  double draw_grid(Rng& rng) const;  // 1D inverse CDF

  const Potential pot_;
  Mode mode_;
  // grid CDF data
  double lo_ = 0.0, h_ = 0.0;
  std::vector<double> cdf_;
  mutable std::uint64_t proposals_ = 0, accepts_ = 0;
};

// Exact draw of max(x_1..x_N) for i.i.d. mu_0 with V = x^2 in 1D,
// via inversion of F^N.
double draw_iid_gaussian_max(int N, Rng& rng);

}
