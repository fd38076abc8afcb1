#include "mfgas/local.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfgas/errors.hpp"

namespace mfgas {

bool Window::contains(const Vec& p) const {
  require_same_dim(p, lo, "Window::contains");
  for (int d = 0; d < p.n; ++d)
    if (p[d] < lo[d] || p[d] > hi[d]) return false;
  return true;
}

double Window::volume() const {
  double v = 1.0;
  for (int d = 0; d < lo.n; ++d) v *= hi[d] - lo[d];
  return v;
}

Window Window::box1d(double a, double b) { return Window{Vec::of(a), Vec::of(b)}; }

Window Window::box2d(double ax, double bx, double ay, double by) {
  return Window{Vec::of(ax, ay), Vec::of(bx, by)};
}

Window Window::bulk_default(int dim) {
  Vec lo = Vec::zero(dim), hi = Vec::zero(dim);
  for (int d = 0; d < dim; ++d) {
    lo[d] = -5.0;
    hi[d] = 5.0;
  }
  return Window{lo, hi};
}

Window Window::edge_default(int dim) {
  Vec lo = Vec::zero(dim), hi = Vec::zero(dim);
  lo[0] = -1.0;
  hi[0] = 6.0;
  for (int d = 1; d < dim; ++d) {
    lo[d] = -2.0;
    hi[d] = 2.0;
  }
  return Window{lo, hi};
}

std::vector<double> PointSample::first_coordinates() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p[0]);
  return out;
}

Vec to_original(const FrameRecord& frame, const Vec& local) {
  Vec r = frame.kind == "edge" ? rotate_to(frame.upsilon, local) : local;
  Vec out = Vec::zero(local.n);
  for (int d = 0; d < local.n; ++d) out[d] = frame.center[d] + r[d] / frame.scale;
  return out;
}

namespace {

void sort_by_first(std::vector<Vec>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    for (int d = 0; d < a.n; ++d) {
      if (a[d] != b[d]) return a[d] < b[d];
    }
    return false;
  });
}

}  // namespace

PointSample extract_bulk_local(const std::vector<double>& positions, int dim, const Vec& E,
                               double N, const Window& window) {
  if (E.n != dim) throw DimensionError("bulk center dimension mismatch");
  const double scale = std::pow(N, 1.0 / dim);
  PointSample out;
  out.dim = dim;
  out.window = window;
  out.frame = FrameRecord{"bulk", static_cast<int>(N), E, scale, Vec::zero(dim), 0.0};
  const int count = static_cast<int>(positions.size()) / dim;
  for (int j = 0; j < count; ++j) {
    Vec y = Vec::zero(dim);
    for (int d = 0; d < dim; ++d)
      y[d] = scale * (positions[static_cast<std::size_t>(j) * dim + d] - E[d]);
    if (window.contains(y)) out.points.push_back(y);
  }
  sort_by_first(out.points);
  return out;
}

PointSample extract_edge_local(const std::vector<double>& positions, const EdgeFrame& frame,
                               const Window& window) {
  const int dim = frame.dim;
  PointSample out;
  out.dim = dim;
  out.window = window;
  out.frame = FrameRecord{"edge", frame.N, frame.E_N, frame.alpha_N, frame.upsilon,
                          frame.eta_N};
  const int count = static_cast<int>(positions.size()) / dim;
  for (int j = 0; j < count; ++j) {
    Vec x = Vec::zero(dim);
    for (int d = 0; d < dim; ++d) x[d] = positions[static_cast<std::size_t>(j) * dim + d];
    const Vec y = frame.phi_inv(x);
    if (window.contains(y)) out.points.push_back(y);
  }
  sort_by_first(out.points);
  return out;
}

double gumbel_statistic(double max_position, int N, double betaN, double l_gamma) {
  if (static_cast<double>(N) <= std::exp(1.0))
    throw ConfigurationError("gumbel statistic requires N > e so that log log N is defined");
  const double lN = std::log(static_cast<double>(N));
  return 2.0 * (std::sqrt(lN) * max_position - lN) -
         0.5 * (betaN - 1.0) * std::log(lN) + std::log(2.0 * l_gamma);
}

double gumbel_statistic(const std::vector<double>& positions, int N, double betaN,
                        double l_gamma) {
  if (positions.empty()) throw ConfigurationError("gumbel statistic needs a nonempty sample");
  return gumbel_statistic(*std::max_element(positions.begin(), positions.end()), N, betaN,
                          l_gamma);
}

}
