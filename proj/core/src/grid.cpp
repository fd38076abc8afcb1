#include "mfgas/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "mfgas/errors.hpp"

namespace mfgas {

double DensityGrid::cell_measure(int i) const {
  if (geometry == GridGeometry::Line) return h;
  return 2.0 * M_PI * node(i) * h;
}

Vec DensityGrid::node_point(int i) const {
  if (geometry == GridGeometry::Line) return Vec::of(node(i));
  return Vec::of(node(i), 0.0);
}

double DensityGrid::mass() const {
  double m = 0.0;
  for (int i = 0; i < count(); ++i) m += values[i] * cell_measure(i);
  return m;
}

void DensityGrid::normalize() {
  double m = mass();
  if (!(m > 0.0)) throw ConfigurationError("grid normalize: nonpositive mass");
  for (auto& v : values) v /= m;
}

DensityGrid DensityGrid::line(double lo, double hi, int cells) {
  if (!(hi > lo) || cells < 1) throw ConfigurationError("grid line: need hi > lo and cells >= 1");
  DensityGrid g;
  g.geometry = GridGeometry::Line;
  g.dim = 1;
  g.lo = lo;
  g.h = (hi - lo) / static_cast<double>(cells);
  g.values.assign(static_cast<std::size_t>(cells), 0.0);
  return g;
}

DensityGrid DensityGrid::radial2d(double rmax, int cells) {
  if (!(rmax > 0.0) || cells < 1) throw ConfigurationError("grid radial2d: need rmax > 0");
  DensityGrid g;
  g.geometry = GridGeometry::Radial2D;
  g.dim = 2;
  g.lo = 0.0;
  g.h = rmax / static_cast<double>(cells);
  g.values.assign(static_cast<std::size_t>(cells), 0.0);
  return g;
}

DensityGrid DensityGrid::from_profile(GridGeometry geom, double lo, double hi, int cells,
                                      const std::function<double(double)>& profile) {
  DensityGrid g = (geom == GridGeometry::Line) ? line(lo, hi, cells) : radial2d(hi, cells);
  for (int i = 0; i < g.count(); ++i) {
    double v = profile(g.node(i));
    if (v < 0.0) throw ConfigurationError("from_profile: negative density value");
    g.values[static_cast<std::size_t>(i)] = v;
  }
  g.normalize();
  return g;
}

namespace {
void require_same_layout(const DensityGrid& a, const DensityGrid& b, const char* where) {
  if (a.geometry != b.geometry || a.count() != b.count() || a.lo != b.lo || a.h != b.h)
    throw ConfigurationError(std::string(where) + ": grid layouts differ");
}
}

double sup_distance(const DensityGrid& a, const DensityGrid& b) {
  require_same_layout(a, b, "sup_distance");
  double d = 0.0;
  for (int i = 0; i < a.count(); ++i)
    d = std::max(d, std::fabs(a.values[static_cast<std::size_t>(i)] -
                              b.values[static_cast<std::size_t>(i)]));
  return d;
}

double l1_distance(const DensityGrid& a, const DensityGrid& b) {
  require_same_layout(a, b, "l1_distance");
  double d = 0.0;
  for (int i = 0; i < a.count(); ++i)
    d += std::fabs(a.values[static_cast<std::size_t>(i)] -
                   b.values[static_cast<std::size_t>(i)]) *
         a.cell_measure(i);
  return d;
}

}
