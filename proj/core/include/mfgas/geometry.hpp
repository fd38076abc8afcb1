#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "mfgas/errors.hpp"

namespace mfgas {

// Point in R^n, n <= 3.  Gases and grids use n in {1, 2}.
struct Vec {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  int n = 1;

  static Vec of(double x) { return Vec{{x, 0.0, 0.0}, 1}; }
  static Vec of(double x, double y) { return Vec{{x, y, 0.0}, 2}; }
  static Vec of(double x, double y, double z) { return Vec{{x, y, z}, 3}; }
  static Vec zero(int dim) {
    Vec v;
    v.n = dim;
    return v;
  }

  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  double norm2() const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += c[i] * c[i];
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

  Vec operator+(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < n; ++i) r.c[i] += o.c[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r = *this;
    for (int i = 0; i < n; ++i) r.c[i] -= o.c[i];
    return r;
  }
  Vec operator*(double a) const {
    Vec r = *this;
    for (int i = 0; i < n; ++i) r.c[i] *= a;
    return r;
  }
  bool operator==(const Vec& o) const {
    if (n != o.n) return false;
    for (int i = 0; i < n; ++i)
      if (c[i] != o.c[i]) return false;
    return true;
  }
};

inline void require_same_dim(const Vec& a, const Vec& b, const char* where) {
  if (a.n != b.n) throw DimensionError(std::string(where) + ": dimension mismatch");
}

inline double dist(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "dist");
  return (a - b).norm();
}

inline double dot(const Vec& a, const Vec& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (int i = 0; i < a.n; ++i) s += a[i] * b[i];
  return s;
}

// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return M_PI;
    case 3: return 4.0 * M_PI / 3.0;
    default: throw DimensionError("unit_ball_volume: unsupported dimension");
  }
}

}
