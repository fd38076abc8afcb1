#include "mfgas/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mfgas/chain.hpp"
#include "mfgas/iid.hpp"
#include "mfgas/parallel.hpp"

namespace mfgas {

double empirical_field(const GasParameters& params, const std::vector<double>& positions,
                       const Vec& u) {
  const int n = params.potential.dim();
  const int N = static_cast<int>(positions.size()) / n;
  double acc = 0.0;
  for (int j = 0; j < N; ++j) {
    Vec xj = Vec::zero(n);
    for (int d = 0; d < n; ++d) xj[d] = positions[static_cast<std::size_t>(j) * n + d];
    acc += params.kernel.eval(u, xj);
  }
  return acc / static_cast<double>(N);
}

namespace {

// integral of e^{-V} over the line (or the plane, radially)
double bare_mass(const Potential& pot) {
  // locate the tail
  double r = 1.0;
  double vmin = pot.radial_value(0.0);
  for (double t = 0.0; t <= 8.0; t += 0.125) vmin = std::min(vmin, pot.radial_value(t));
  while (pot.radial_value(r) - vmin < 45.0 && r < 1e7) r *= 1.25;
  const int cells = 400000;
  const double h = r / cells;
  double acc = 0.0;
  if (pot.dim() == 1) {
    for (int i = 0; i < cells; ++i) {
      const double t = (i + 0.5) * h;
      acc += std::exp(-pot.radial_value(t));
    }
    acc *= 2.0 * h;
  } else {
    for (int i = 0; i < cells; ++i) {
      const double t = (i + 0.5) * h;
      acc += t * std::exp(-pot.radial_value(t));
    }
    acc *= 2.0 * std::numbers::pi * h;
  }
  return acc;
}

}  // namespace

PartitionRatioEstimate estimate_partition_ratio(const GasParameters& params,
                                                const PartitionRatioOptions& opts) {
  PartitionRatioEstimate out;
  out.l0 = bare_mass(params.potential);
  const int N = params.N;
  const double beta = params.beta();

  GasParameters sub = params;
  sub.N = N - 1;
  sub.beta_override = beta;  // the (N-1)-gas keeps the N-gas inverse temperature

  const std::uint64_t sweep = static_cast<std::uint64_t>(std::max(1, N - 1));
  ChainOptions copts;
  copts.steps = opts.steps_per_replica ? opts.steps_per_replica : 30 * sweep;
  copts.burn_in = opts.burn_in != UINT64_MAX ? opts.burn_in : 100 * sweep;
  copts.thin = opts.thin ? opts.thin : sweep;
  copts.record_frames = true;

  const IidSampler mu0(params.potential);
  const int R = std::max(2, opts.replicas);
  std::vector<double> replica_mean(R, 0.0);
  std::vector<double> replica_max_w(R, 0.0);
  std::vector<double> replica_sum_w(R, 0.0);
  std::vector<double> replica_count(R, 0.0);

  parallel_for(R, opts.threads, [&](int r) {
    ChainOptions local = copts;
    local.seed = derive_seed(opts.seed, 2 * static_cast<std::uint64_t>(r));
    ChainRun run = run_chain(sub, local);
    Rng probe_rng = make_rng(derive_seed(opts.seed, 2 * static_cast<std::uint64_t>(r) + 1));
    double sum = 0.0, maxw = 0.0;
    double count = 0.0;
    for (const auto& frame : run.frames) {
      for (int p = 0; p < opts.probes_per_frame; ++p) {
        const Vec u = mu0.draw(probe_rng);
        const double field = empirical_field(sub, frame, u);  // X_{N-1}(u)
        const double w = std::exp(-beta * static_cast<double>(N - 1) * field);
        sum += w;
        maxw = std::max(maxw, w);
        count += 1.0;
      }
    }
    replica_mean[r] = count > 0.0 ? sum / count : 0.0;
    replica_max_w[r] = maxw;
    replica_sum_w[r] = sum;
    replica_count[r] = count;
  });

  double m = 0.0;
  for (double v : replica_mean) m += v;
  m /= R;
  double var = 0.0;
  for (double v : replica_mean) var += (v - m) * (v - m);
  var /= (R - 1);
  out.value = out.l0 * m;
  out.stderr_ = out.l0 * std::sqrt(var / R);

  const double total_w = std::accumulate(replica_sum_w.begin(), replica_sum_w.end(), 0.0);
  const double max_w = *std::max_element(replica_max_w.begin(), replica_max_w.end());
  if (total_w > 0.0 && max_w > 0.5 * total_w) {
    out.warnings.push_back(
        "partition ratio estimate dominated by a single importance weight; "
        "increase replicas or chain length");
  }
  return out;
}

Histogram density_of_states_histogram(const std::vector<std::vector<double>>& position_sets,
                                      double lo, double hi, int bins) {
  Histogram hist;
  hist.lo = lo;
  hist.h = (hi - lo) / bins;
  hist.counts.assign(static_cast<std::size_t>(bins), 0.0);
  hist.density.assign(static_cast<std::size_t>(bins), 0.0);
  for (const auto& set : position_sets) {
    for (double x : set) {
      if (x < lo || x >= hi) continue;
      const int b = static_cast<int>((x - lo) / hist.h);
      if (b >= 0 && b < bins) {
        hist.counts[static_cast<std::size_t>(b)] += 1.0;
        ++hist.total;
      }
    }
  }
  if (hist.total > 0) {
    for (int b = 0; b < bins; ++b)
      hist.density[static_cast<std::size_t>(b)] =
          hist.counts[static_cast<std::size_t>(b)] / (static_cast<double>(hist.total) * hist.h);
  }
  return hist;
}

}
