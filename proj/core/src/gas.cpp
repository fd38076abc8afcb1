#include "mfgas/gas.hpp"

#include <cmath>
#include <limits>

#include "mfgas/errors.hpp"

namespace mfgas {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

inline double pair_r2(const double* a, const double* b, int dim) {
  double r2 = 0.0;
  for (int d = 0; d < dim; ++d) {
    double t = a[d] - b[d];
    r2 += t * t;
  }
  return r2;
}

inline double pair_g(const GasParameters& p, const double* a, const double* b) {
  double r2 = pair_r2(a, b, p.kernel.dim());
  if (r2 == 0.0) return kInf;
  if (p.kernel.family() == KernelFamily::Riesz) return std::pow(r2, -0.5 * p.kernel.s());
  return -0.5 * std::log(r2);
}

// Accumulates sum log r2_i with one log call per flushed product rather
// than one per pair.  The running product is flushed whenever it leaves
// a wide safe band, so it cannot reach 0 or inf from nonzero inputs.
struct LogProductAccumulator {
  double logsum = 0.0;
  double prod = 1.0;

  void add_r2(double r2) {
    prod *= r2;
    if (prod < 1e-290 || prod > 1e290) {
      logsum += std::log(prod);
      prod = 1.0;
    }
  }
  double value() const { return logsum + std::log(prod); }
};
}

double total_energy(const GasParameters& params, const std::vector<double>& positions) {
  int dim = params.dim();
  int n = static_cast<int>(positions.size()) / dim;
  double beta = params.beta();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec xi = Vec::zero(dim);
    for (int d = 0; d < dim; ++d) xi[d] = positions[static_cast<std::size_t>(i * dim + d)];
    acc += params.potential.value(xi);
  }
  if (beta != 0.0) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        acc += beta * pair_g(params, &positions[static_cast<std::size_t>(i * dim)],
                             &positions[static_cast<std::size_t>(j * dim)]);
  }
  return acc;
}

ParticleConfiguration make_configuration(const GasParameters& params,
                                         std::vector<double> positions) {
  if (positions.size() % static_cast<std::size_t>(params.dim()) != 0)
    throw DimensionError("make_configuration: positions not a multiple of dim");
  ParticleConfiguration c;
  c.dim = params.dim();
  c.N = static_cast<int>(positions.size()) / c.dim;
  c.positions = std::move(positions);
  refresh_caches(params, c);
  return c;
}

void refresh_caches(const GasParameters& params, ParticleConfiguration& config) {
  int n = config.N, dim = config.dim;
  config.field.assign(static_cast<std::size_t>(n), 0.0);
  double vsum = 0.0;
  for (int i = 0; i < n; ++i) vsum += params.potential.value(config.at(i));
  double pair_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double g = pair_g(params, &config.positions[static_cast<std::size_t>(i * dim)],
                        &config.positions[static_cast<std::size_t>(j * dim)]);
      config.field[static_cast<std::size_t>(i)] += g;
      config.field[static_cast<std::size_t>(j)] += g;
      pair_sum += g;
    }
  }
  config.cached_energy = params.beta() * pair_sum + vsum;
}

double delta_energy(const GasParameters& params, const ParticleConfiguration& config, int j,
                    const Vec& proposal) {
  if (proposal.n != config.dim) throw DimensionError("delta_energy: proposal dimension mismatch");
  if (j < 0 || j >= config.N) throw std::out_of_range("delta_energy: particle index");
  double dv = params.potential.value(proposal) - params.potential.value(config.at(j));
  double beta = params.beta();
  if (beta == 0.0 || config.N == 1) return dv;
  double fresh = 0.0;
  const double* prop = proposal.c.data();
  if (params.kernel.family() == KernelFamily::Log) {
    LogProductAccumulator acc;
    for (int i = 0; i < config.N; ++i) {
      if (i == j) continue;
      double r2 =
          pair_r2(prop, &config.positions[static_cast<std::size_t>(i * config.dim)], config.dim);
      if (r2 == 0.0) return kInf;
      acc.add_r2(r2);
    }
    fresh = -0.5 * acc.value();
  } else {
    for (int i = 0; i < config.N; ++i) {
      if (i == j) continue;
      double g = pair_g(params, prop, &config.positions[static_cast<std::size_t>(i * config.dim)]);
      if (g == kInf) return kInf;
      fresh += g;
    }
  }
  return dv + beta * (fresh - config.field[static_cast<std::size_t>(j)]);
}

void apply_move(const GasParameters& params, ParticleConfiguration& config, int j,
                const Vec& proposal) {
  double beta = params.beta();
  double dv = params.potential.value(proposal) - params.potential.value(config.at(j));
  double old_fj = config.field[static_cast<std::size_t>(j)];
  double new_fj = 0.0;
  Vec old = config.at(j);
  const double* prop = proposal.c.data();
  if (params.kernel.family() == KernelFamily::Log) {
    // one log of the distance ratio per pair for the field update, one
    // batched log for the new field of j
    LogProductAccumulator acc;
    for (int i = 0; i < config.N; ++i) {
      if (i == j) continue;
      const double* xi = &config.positions[static_cast<std::size_t>(i * config.dim)];
      double r2_old = pair_r2(old.c.data(), xi, config.dim);
      double r2_new = pair_r2(prop, xi, config.dim);
      config.field[static_cast<std::size_t>(i)] += -0.5 * std::log(r2_new / r2_old);
      acc.add_r2(r2_new);
    }
    new_fj = -0.5 * acc.value();
  } else {
    for (int i = 0; i < config.N; ++i) {
      if (i == j) continue;
      const double* xi = &config.positions[static_cast<std::size_t>(i * config.dim)];
      double g_old = pair_g(params, old.c.data(), xi);
      double g_new = pair_g(params, prop, xi);
      config.field[static_cast<std::size_t>(i)] += g_new - g_old;
      new_fj += g_new;
    }
  }
  config.field[static_cast<std::size_t>(j)] = new_fj;
  config.set(j, proposal);
  config.cached_energy += dv + beta * (new_fj - old_fj);
}

double accept_probability(double delta) {
  if (delta <= 0.0) return 1.0;
  return std::exp(-delta);
}

}
