#pragma once

#include <string>
#include <vector>

#include "mfgas/edge.hpp"
#include "mfgas/geometry.hpp"

namespace mfgas {

// Axis-aligned box; components may be infinite.
struct Window {
  Vec lo;
  Vec hi;

  bool contains(const Vec& p) const;
  double volume() const;  // +inf when unbounded

  static Window box1d(double a, double b);
  static Window box2d(double ax, double bx, double ay, double by);
  // defaults used by the statistics drivers
  static Window bulk_default(int dim);  // [-5, 5]^n
  static Window edge_default(int dim);  // [-1, 6] x [-2, 2]^{n-1}
};

// Where a local sample came from, sufficient to undo the rescaling:
// original = center + rotate_to(upsilon, p) / scale (edge) or
// original = center + p / scale (bulk).
struct FrameRecord {
  std::string kind;  // "bulk" or "edge"
  int N = 0;
  Vec center;        // E (bulk) or E_N (edge)
  double scale = 1.0;  // N^{1/n} (bulk) or alpha_N (edge)
  Vec upsilon;       // edge only
  double eta_N = 0.0;  // edge only
};

struct PointSample {
  int dim = 1;
  std::vector<Vec> points;  // sorted by first coordinate
  Window window;
  FrameRecord frame;

  std::vector<double> first_coordinates() const;
};

// Undo the rescaling of one local point.
Vec to_original(const FrameRecord& frame, const Vec& local);

// {N^{1/n} (x_j - E)} restricted to the window.  N is the rescaling
// parameter and may differ from the particle count (density-matched
// rescaling passes an effective N).
PointSample extract_bulk_local(const std::vector<double>& positions, int dim, const Vec& E,
                               double N, const Window& window);

// {phi_N^{-1}(x_j)} restricted to the window.
PointSample extract_edge_local(const std::vector<double>& positions, const EdgeFrame& frame,
                               const Window& window);

// xi_N = 2 (sqrt(log N) max_j x_j - log N) - ((betaN - 1)/2) log log N + log(2 L_gamma).
// Asymptotically standard Gumbel for the 1D gas with V = x^2.
double gumbel_statistic(double max_position, int N, double betaN, double l_gamma);
double gumbel_statistic(const std::vector<double>& positions, int N, double betaN,
                        double l_gamma);

}
