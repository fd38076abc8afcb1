#include "mfgas/iid.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>

#include "mfgas/errors.hpp"

namespace mfgas {

namespace {
// domain where e^{-V/2} is above 1e-14 of its peak, scanned radially
double tail_cut(const Potential& pot, double scale) {
  const double drop = -std::log(1e-14) / scale;
  double x = 0.25;
  while (x < 1e6) {
    double v = pot.dim() == 1
                   ? std::min(pot.value(Vec::of(x)), pot.value(Vec::of(-x)))
                   : pot.radial_value(x);
    if (v > drop) return x;
    x *= 1.25;
  }
  throw ConfigurationError("iid sampler: potential tail never decays");
}
}

IidSampler::IidSampler(const Potential& pot, int grid_points) : pot_(pot) {
  if (pot.dim() == 1) {
    if (pot.family() == PotentialFamily::Power && pot.alpha() == 2.0) {
      mode_ = Mode::Normal1D;
      return;
    }
    if (pot.family() == PotentialFamily::Power && pot.alpha() == 1.0) {
      mode_ = Mode::Laplace1D;
      return;
    }
    mode_ = Mode::Grid1D;
    double H;
    if (pot.family() == PotentialFamily::Tabulated) {
      lo_ = pot.table_xs().front();
      H = pot.table_xs().back();
    } else {
      H = tail_cut(pot, 1.0);
      lo_ = -H;
    }
    h_ = (H - lo_) / grid_points;
    cdf_.resize(static_cast<std::size_t>(grid_points));
    double acc = 0.0;
    for (int i = 0; i < grid_points; ++i) {
      double x = lo_ + (i + 0.5) * h_;
      double v = pot.value(Vec::of(x));
      acc += std::isfinite(v) ? std::exp(-v) * h_ : 0.0;
      cdf_[static_cast<std::size_t>(i)] = acc;
    }
    if (!(acc > 0.0)) throw ConfigurationError("iid sampler: zero mass density");
    for (auto& c : cdf_) c /= acc;
    return;
  }
  if (pot.dim() != 2) throw DimensionError("iid sampler: dimensions 1 and 2 only");
  // 2D: dominating product law h(t) = e^{-V(|t|)/2} per axis, valid when
  // the radial profile is nondecreasing
  mode_ = Mode::Product2D;
  if (pot.family() == PotentialFamily::Tabulated) {
    const auto& vs = pot.table_values();
    for (std::size_t i = 1; i < vs.size(); ++i)
      if (vs[i] < vs[i - 1])
        throw ConfigurationError("iid sampler: 2D rejection needs a nondecreasing radial profile");
  }
  double H = tail_cut(pot, 2.0);
  lo_ = -H;
  h_ = 2.0 * H / grid_points;
  cdf_.resize(static_cast<std::size_t>(grid_points));
  double acc = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    double t = lo_ + (i + 0.5) * h_;
    double v = pot.radial_value(std::fabs(t));
    acc += std::isfinite(v) ? std::exp(-0.5 * v) * h_ : 0.0;
    cdf_[static_cast<std::size_t>(i)] = acc;
  }
  for (auto& c : cdf_) c /= acc;
}

double IidSampler::draw_grid(Rng& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()),
                                        cdf_.size() - 1);
  double prev = i == 0 ? 0.0 : cdf_[i - 1];
  double span = cdf_[i] - prev;
  double frac = span > 0.0 ? (u - prev) / span : 0.5;
  return lo_ + (static_cast<double>(i) + frac) * h_;
}

double IidSampler::draw_axis(Rng& rng) const { return draw_grid(rng); }

Vec IidSampler::draw(Rng& rng) const {
  switch (mode_) {
    case Mode::Normal1D: {
      std::normal_distribution<double> n(0.0, std::sqrt(0.5));
      return Vec::of(n(rng));
    }
    case Mode::Laplace1D: {
      std::exponential_distribution<double> e(1.0);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      double m = e(rng);
      return Vec::of(unif(rng) < 0.5 ? -m : m);
    }
    case Mode::Grid1D:
      return Vec::of(draw_grid(rng));
    case Mode::Product2D:
    default: {
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      for (;;) {
        ++proposals_;
        double x = draw_axis(rng), y = draw_axis(rng);
        double r = std::sqrt(x * x + y * y);
        double vxy = pot_.radial_value(r);
        double bound = 0.5 * (pot_.radial_value(std::fabs(x)) + pot_.radial_value(std::fabs(y)));
        double ratio = std::isfinite(vxy) ? std::exp(-(vxy - bound)) : 0.0;
        if (unif(rng) < ratio) {
          ++accepts_;
          return Vec::of(x, y);
        }
        if (proposals_ > 10000 && rejection_efficiency() < 1e-4)
          throw ConfigurationError("iid sampler: rejection efficiency below 1e-4");
      }
    }
  }
}

std::vector<double> IidSampler::draw_many(int N, Rng& rng) const {
  if (N < 0) throw ConfigurationError("iid sampler: N must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(N * pot_.dim()));
  for (int k = 0; k < N; ++k) {
    Vec v = draw(rng);
    for (int d = 0; d < pot_.dim(); ++d) out.push_back(v[d]);
  }
  return out;
}

double IidSampler::rejection_efficiency() const {
  if (mode_ != Mode::Product2D || proposals_ == 0) return 1.0;
  return static_cast<double>(accepts_) / static_cast<double>(proposals_);
}

double draw_iid_gaussian_max(int N, Rng& rng) {
  if (N < 1) throw ConfigurationError("draw_iid_gaussian_max: N must be >= 1");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  while (u <= 0.0) u = unif(rng);
  // 1 - U^{1/N}, computed stably for huge N
  double eps = -std::expm1(std::log(u) / static_cast<double>(N));
  return boost::math::erfc_inv(2.0 * eps);
}

}
