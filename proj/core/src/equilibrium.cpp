#include "mfgas/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfgas/errors.hpp"

namespace mfgas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_line_1d(const InteractionKernel& kernel, const DensityGrid& grid, const char* where) {
  if (grid.geometry != GridGeometry::Line) return;
  if (kernel.dim() != 1) throw DimensionError(std::string(where) + ": Line grid needs a 1D kernel");
  if (!kernel.has_1d_primitives())
    throw ConfigurationError(std::string(where) + ": Riesz s >= 1 has divergent 1D energy");
}

void check_radial(const InteractionKernel& kernel, const DensityGrid& grid, const char* where) {
  if (grid.geometry != GridGeometry::Radial2D) return;
  if (kernel.dim() != 2)
    throw DimensionError(std::string(where) + ": Radial2D grid needs a 2D kernel");
  if (kernel.family() == KernelFamily::Riesz && kernel.s() >= 1.0)
    throw ConfigurationError(
        std::string(where) + ": radial quadrature supports Riesz s < 1 (and Log) in 2D");
}

// Mean of g over a circle of radius r, observed at distance R from the
// center.  Log case is the classical closed form.
double ring_average(const InteractionKernel& kernel, double r, double R) {
  if (kernel.family() == KernelFamily::Log) return -std::log(std::max(r, R));
  double s = kernel.s();
  double near = std::fabs(r - R) / std::max(1e-300, r + R);
  if (near > 0.05) {
    // smooth integrand: 64-point midpoint in theta
    const int n = 64;
    double acc = 0.0;
    for (int q = 0; q < n; ++q) {
      double th = M_PI * (q + 0.5) / n;
      double d2 = r * r + R * R - 2.0 * r * R * std::cos(th);
      acc += std::pow(d2, -0.5 * s);
    }
    return acc / n;
  }
  // near-coincident radii: substitute theta = pi t^2 to absorb the
  // endpoint singularity, then midpoint in t
  const int n = 2048;
  double acc = 0.0;
  for (int q = 0; q < n; ++q) {
    double t = (q + 0.5) / n;
    double th = M_PI * t * t;
    double d2 = r * r + R * R - 2.0 * r * R * std::cos(th);
    acc += std::pow(d2, -0.5 * s) * 2.0 * M_PI * t;
  }
  return acc / (M_PI * n);
}

// Integral of g over an annular cell of the radial grid, observed at R.
double radial_cell_integral(const InteractionKernel& kernel, const DensityGrid& grid, int cell,
                            double R) {
  static const double gl_x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static const double gl_w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double a = grid.cell_lo(cell), b = grid.cell_hi(cell);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int q = 0; q < 3; ++q) {
    double r = mid + half * gl_x[q];
    acc += gl_w[q] * half * 2.0 * M_PI * r * ring_average(kernel, r, R);
  }
  return acc;
}

void check_truncated_tail(const InteractionKernel& kernel, const DensityGrid& mu,
                          const char* where) {
  if (!mu.truncated_tail || kernel.family() != KernelFamily::Log) return;
  double peak = 0.0;
  for (double v : mu.values) peak = std::max(peak, v);
  if (peak <= 0.0) return;
  double edge = (mu.geometry == GridGeometry::Line)
                    ? std::max(mu.values.front(), mu.values.back())
                    : mu.values.back();
  if (edge > 1e-6 * peak)
    throw TruncationDomainError(std::string(where) +
                                ": mass at the truncation boundary, log tail not controlled");
}

}  // namespace

KernelTables build_kernel_tables(const InteractionKernel& kernel, const DensityGrid& grid) {
  if (grid.geometry != GridGeometry::Line)
    throw ConfigurationError("build_kernel_tables: Line grids only");
  check_line_1d(kernel, grid, "build_kernel_tables");
  KernelTables t;
  t.h = grid.h;
  int n = grid.count();
  t.point_avg.resize(static_cast<std::size_t>(n));
  t.pair_avg.resize(static_cast<std::size_t>(n));
  double h = grid.h;
  for (int d = 0; d < n; ++d) {
    double c = static_cast<double>(d) * h;
    t.point_avg[static_cast<std::size_t>(d)] =
        (kernel.prim1(c + 0.5 * h) - kernel.prim1(c - 0.5 * h)) / h;
    t.pair_avg[static_cast<std::size_t>(d)] =
        (kernel.prim2(c + h) - 2.0 * kernel.prim2(c) + kernel.prim2(c - h)) / (h * h);
  }
  return t;
}

double potential_of_measure(const InteractionKernel& kernel, const DensityGrid& mu, const Vec& x) {
  check_truncated_tail(kernel, mu, "potential_of_measure");
  if (mu.geometry == GridGeometry::Line) {
    check_line_1d(kernel, mu, "potential_of_measure");
    if (x.n != 1) throw DimensionError("potential_of_measure: expected a 1D point");
    double acc = 0.0;
    for (int j = 0; j < mu.count(); ++j) {
      double rho = mu.values[static_cast<std::size_t>(j)];
      if (rho == 0.0) continue;
      acc += rho * (kernel.prim1(x[0] - mu.cell_lo(j)) - kernel.prim1(x[0] - mu.cell_hi(j)));
    }
    return acc;
  }
  check_radial(kernel, mu, "potential_of_measure");
  if (x.n != 2) throw DimensionError("potential_of_measure: expected a 2D point");
  double R = x.norm();
  double acc = 0.0;
  for (int j = 0; j < mu.count(); ++j) {
    double rho = mu.values[static_cast<std::size_t>(j)];
    if (rho == 0.0) continue;
    acc += rho * radial_cell_integral(kernel, mu, j, R);
  }
  return acc;
}

std::vector<double> potential_field(const InteractionKernel& kernel, const DensityGrid& mu) {
  check_truncated_tail(kernel, mu, "potential_field");
  int n = mu.count();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  if (mu.geometry == GridGeometry::Line) {
    KernelTables t = build_kernel_tables(kernel, mu);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j)
        acc += mu.values[static_cast<std::size_t>(j)] *
               t.point_avg[static_cast<std::size_t>(std::abs(i - j))];
      out[static_cast<std::size_t>(i)] = acc * mu.h;
    }
    return out;
  }
  check_radial(kernel, mu, "potential_field");
  for (int i = 0; i < n; ++i) {
    double R = mu.node(i);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      double rho = mu.values[static_cast<std::size_t>(j)];
      if (rho == 0.0) continue;
      acc += rho * radial_cell_integral(kernel, mu, j, R);
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

double energy_of_values(const InteractionKernel& kernel, const DensityGrid& layout,
                        const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != layout.count())
    throw ConfigurationError("energy_of_values: value count does not match grid");
  int n = layout.count();
  if (layout.geometry == GridGeometry::Line) {
    check_line_1d(kernel, layout, "energy");
    KernelTables t = build_kernel_tables(kernel, layout);
    double h = layout.h;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double wi = values[static_cast<std::size_t>(i)] * h;
      if (wi == 0.0) continue;
      double row = 0.0;
      for (int j = 0; j < n; ++j)
        row += values[static_cast<std::size_t>(j)] *
               t.pair_avg[static_cast<std::size_t>(std::abs(i - j))];
      acc += wi * row * h;
    }
    return acc;
  }
  check_radial(kernel, layout, "energy");
  // radial pair averages via the cell integral observed from 3 radii
  static const double gl_x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static const double gl_w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double vi = values[static_cast<std::size_t>(i)];
    if (vi == 0.0) continue;
    double a = layout.cell_lo(i), b = layout.cell_hi(i);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int j = 0; j < n; ++j) {
      double vj = values[static_cast<std::size_t>(j)];
      if (vj == 0.0) continue;
      double cell = 0.0;
      for (int q = 0; q < 3; ++q) {
        double r = mid + half * gl_x[q];
        cell += gl_w[q] * half * 2.0 * M_PI * r * radial_cell_integral(kernel, layout, j, r);
      }
      acc += vi * vj * cell;
    }
  }
  return acc;
}

double energy(const InteractionKernel& kernel, const DensityGrid& mu) {
  return energy_of_values(kernel, mu, mu.values);
}

double weighted_energy(const InteractionKernel& kernel, const DensityGrid& mu) {
  double e = energy(kernel, mu);
  if (kernel.family() == KernelFamily::Riesz) return e;
  double tilt = 0.0;
  for (int i = 0; i < mu.count(); ++i)
    tilt += mu.values[static_cast<std::size_t>(i)] * mu.cell_measure(i) *
            theta_tilt(mu.node_point(i));
  return e + 2.0 * tilt;
}

double relative_entropy(const DensityGrid& mu, const DensityGrid& nu) {
  if (mu.geometry != nu.geometry || mu.count() != nu.count() || mu.h != nu.h || mu.lo != nu.lo)
    throw ConfigurationError("relative_entropy: grid layouts differ");
  double acc = 0.0;
  for (int i = 0; i < mu.count(); ++i) {
    double p = mu.values[static_cast<std::size_t>(i)];
    if (p <= 0.0) continue;
    double q = nu.values[static_cast<std::size_t>(i)];
    if (q <= 0.0) return kInf;
    acc += p * std::log(p / q) * mu.cell_measure(i);
  }
  return acc;
}

DensityGrid tilted_reference(const InteractionKernel& kernel, const Potential& pot, double gamma,
                             const DensityGrid& layout, double* c_gamma) {
  double kappa = (kernel.family() == KernelFamily::Log) ? gamma : 0.0;
  DensityGrid nu = layout;
  nu.truncated_tail = false;
  for (int i = 0; i < nu.count(); ++i)
    nu.values[static_cast<std::size_t>(i)] =
        std::exp(-pot.tilted_value(kappa, layout.node_point(i)));
  double m = nu.mass();
  if (c_gamma) *c_gamma = m;
  nu.normalize();
  return nu;
}

double free_energy(const InteractionKernel& kernel, const Potential& pot, const DensityGrid& mu,
                   double gamma) {
  DensityGrid nu = tilted_reference(kernel, pot, gamma, mu, nullptr);
  double h = relative_entropy(mu, nu);
  if (h == kInf) return kInf;
  return 0.5 * gamma * weighted_energy(kernel, mu) + h;
}

double auto_domain_halfwidth(const InteractionKernel& kernel, const Potential& pot, double gamma) {
  double kappa = (kernel.family() == KernelFamily::Log) ? gamma + 1.0 : 0.0;
  const double drop = -std::log(1e-12);

  auto tilted_at = [&](double x) {
    if (pot.dim() == 1) {
      double a = pot.tilted_value(kappa, Vec::of(x));
      double b = pot.tilted_value(kappa, Vec::of(-x));
      return std::min(a, b);  // cover the slower-decaying side
    }
    return pot.radial_value(x) - kappa * std::log1p(x);
  };

  if (pot.family() == PotentialFamily::Tabulated) {
    double end = pot.dim() == 1
                     ? std::max(std::fabs(pot.table_xs().front()), std::fabs(pot.table_xs().back()))
                     : pot.table_xs().back();
    return end;
  }

  double vmin = kInf, arg = 0.0;
  for (double x = 0.0; x <= 64.0; x += 0.01) {
    double v = tilted_at(x);
    if (v < vmin) { vmin = v; arg = x; }
  }
  double level = vmin + drop;
  double last_below = arg;
  double x = std::max(arg, 0.01);
  for (int k = 0; k < 400000 && x < 1e9; ++k) {
    if (tilted_at(x) < level) last_below = x;
    x = x < 64.0 ? x + 0.01 : x * 1.01;
  }
  if (tilted_at(x) < level)
    throw ConfigurationError(
        "auto_domain_halfwidth: potential does not outgrow the tilt; "
        "V must grow faster than kappa*log(1+|x|) for every kappa");
  return last_below + 0.02;
}

double el_residual(const InteractionKernel& kernel, const Potential& pot,
                   const EquilibriumSolution& sol) {
  std::vector<double> u = potential_field(kernel, sol.density);
  double r = 0.0;
  for (int i = 0; i < sol.density.count(); ++i) {
    double target = std::exp(-sol.gamma * u[static_cast<std::size_t>(i)] -
                             pot.value(sol.density.node_point(i))) /
                    sol.L_gamma;
    r = std::max(r, std::fabs(sol.density.values[static_cast<std::size_t>(i)] - target));
  }
  return r;
}

EquilibriumSolution solve_equilibrium(const InteractionKernel& kernel, const Potential& pot,
                                      double gamma, const SolveOptions& opts) {
  if (gamma < 0.0) throw ConfigurationError("solve_equilibrium: gamma must be >= 0");
  int dim = kernel.dim();
  if (pot.dim() != dim) throw DimensionError("solve_equilibrium: kernel/potential dimensions differ");
  if (dim > 2) throw DimensionError("solve_equilibrium: grids support 1D and radial 2D");

  double H = opts.domain_halfwidth > 0.0 ? opts.domain_halfwidth
                                         : auto_domain_halfwidth(kernel, pot, gamma);
  DensityGrid grid = (dim == 1) ? DensityGrid::line(-H, H, opts.cells)
                                : DensityGrid::radial2d(H, opts.cells);
  grid.truncated_tail = true;

  EquilibriumSolution sol;
  sol.gamma = gamma;

  // start from the bare Boltzmann profile
  for (int i = 0; i < grid.count(); ++i)
    grid.values[static_cast<std::size_t>(i)] = std::exp(-pot.value(grid.node_point(i)));
  grid.normalize();

  double eta = opts.damping;
  if (!(eta > 0.0) || eta > 1.0) throw ConfigurationError("solve_equilibrium: damping in (0, 1]");
  double prev_res = kInf;

  // tables are layout-only, build once (Line geometry)
  KernelTables tables;
  bool line = grid.geometry == GridGeometry::Line;
  if (line) tables = build_kernel_tables(kernel, grid);

  std::vector<double> vcache(static_cast<std::size_t>(grid.count()));
  for (int i = 0; i < grid.count(); ++i)
    vcache[static_cast<std::size_t>(i)] = pot.value(grid.node_point(i));

  std::vector<double> u, target(static_cast<std::size_t>(grid.count()));
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (line) {
      int n = grid.count();
      u.assign(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
          acc += grid.values[static_cast<std::size_t>(j)] *
                 tables.point_avg[static_cast<std::size_t>(std::abs(i - j))];
        u[static_cast<std::size_t>(i)] = acc * grid.h;
      }
    } else {
      DensityGrid tmp = grid;
      tmp.truncated_tail = false;
      u = potential_field(kernel, tmp);
    }

    double z = 0.0;
    for (int i = 0; i < grid.count(); ++i) {
      double w = std::exp(-gamma * u[static_cast<std::size_t>(i)] - vcache[static_cast<std::size_t>(i)]);
      target[static_cast<std::size_t>(i)] = w;
      z += w * grid.cell_measure(i);
    }
    double res = 0.0;
    for (int i = 0; i < grid.count(); ++i) {
      target[static_cast<std::size_t>(i)] /= z;
      res = std::max(res, std::fabs(grid.values[static_cast<std::size_t>(i)] -
                                    target[static_cast<std::size_t>(i)]));
    }

    sol.residual_history.push_back(res);
    sol.mass_history.push_back(grid.mass());
    if (opts.track_free_energy) {
      DensityGrid snap = grid;
      snap.truncated_tail = false;
      sol.free_energy_history.push_back(free_energy(kernel, pot, snap, gamma));
    }
    sol.residual = res;
    sol.L_gamma = z;

    if (res <= opts.tol) {
      sol.converged = true;
      ++it;
      break;
    }

    if (res > prev_res && eta > 1.0 / 64.0) eta *= 0.5;  // damp harder when the step overshot
    else if (res < prev_res) eta = std::min(opts.damping, eta * 1.25);
    prev_res = res;

    for (int i = 0; i < grid.count(); ++i) {
      auto k = static_cast<std::size_t>(i);
      grid.values[k] = (1.0 - eta) * grid.values[k] + eta * target[k];
    }
    grid.normalize();
  }

  double peak = 0.0;
  for (double v : grid.values) peak = std::max(peak, v);
  double edge = line ? std::max(grid.values.front(), grid.values.back()) : grid.values.back();
  sol.boundary_fraction = peak > 0.0 ? edge / peak : 0.0;
  if (sol.boundary_fraction > opts.boundary_eps)
    throw DomainTooSmallError("solve_equilibrium: boundary density fraction " +
                              std::to_string(sol.boundary_fraction) +
                              " exceeds boundary_eps; enlarge the domain");

  sol.density = grid;
  sol.field = u;
  sol.iterations = it;
  return sol;
}

}
