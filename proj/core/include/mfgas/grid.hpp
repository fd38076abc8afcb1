#pragma once

#include <functional>
#include <vector>

#include "mfgas/geometry.hpp"

namespace mfgas {

enum class GridGeometry { Line, Radial2D };

// Probability density discretized on a uniform cell grid.  Node i sits at
// the center of cell i; values are densities with respect to Lebesgue
// measure (Line) or area (Radial2D, where cell i is the annulus around
// radius r_i and carries measure 2 pi r_i h, which is exact).
struct DensityGrid {
  GridGeometry geometry = GridGeometry::Line;
  int dim = 1;
  double lo = 0.0;  // left cell boundary (Line); always 0 for Radial2D
  double h = 0.0;
  std::vector<double> values;

  // Set on solver-produced grids: the grid is a truncation of a measure
  // with unbounded support, so boundary mass is a red flag downstream.
  bool truncated_tail = false;

  int count() const { return static_cast<int>(values.size()); }
  double node(int i) const { return lo + (static_cast<double>(i) + 0.5) * h; }
  double cell_lo(int i) const { return lo + static_cast<double>(i) * h; }
  double cell_hi(int i) const { return lo + static_cast<double>(i + 1) * h; }
  double cell_measure(int i) const;
  Vec node_point(int i) const;

  double mass() const;
  void normalize();  // divide values by mass

  static DensityGrid line(double lo, double hi, int cells);
  static DensityGrid radial2d(double rmax, int cells);

  // Fill from an unnormalized density profile and normalize to mass 1.
  static DensityGrid from_profile(GridGeometry geom, double lo, double hi, int cells,
                                  const std::function<double(double)>& profile);
};

// Sup-norm and L1 distances between densities on the same grid layout.
double sup_distance(const DensityGrid& a, const DensityGrid& b);
double l1_distance(const DensityGrid& a, const DensityGrid& b);

}
