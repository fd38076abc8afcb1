#include "mfgas/chain.hpp"

#include <algorithm>
#include <cmath>

#include "mfgas/errors.hpp"
#include "mfgas/iid.hpp"

namespace mfgas {

bool mh_step(const GasParameters& params, ChainState& state) {
  int n = state.config.N;
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::normal_distribution<double> step(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  int j = pick(state.rng);
  Vec prop = state.config.at(j);
  for (int d = 0; d < state.config.dim; ++d) prop[d] += state.proposal_scale * step(state.rng);

  double delta = delta_energy(params, state.config, j, prop);
  bool accept = delta <= 0.0 || unif(state.rng) < std::exp(-delta);
  if (accept) {
    apply_move(params, state.config, j, prop);
    ++state.accepted;
    ++state.window_accepted;
  }
  ++state.steps;
  ++state.window_steps;

  // stochastic-approximation scale adaptation toward 0.3 acceptance,
  // active only while burning in
  if (state.adapting() && state.window_steps >= 100) {
    double rate = static_cast<double>(state.window_accepted) /
                  static_cast<double>(state.window_steps);
    state.proposal_scale *= std::exp(0.5 * (rate - 0.3));
    state.proposal_scale = std::clamp(state.proposal_scale, 1e-4, 1e3);
    state.window_steps = 0;
    state.window_accepted = 0;
  }
  return accept;
}

ChainState init_chain(const GasParameters& params, std::uint64_t seed, double initial_scale,
                      std::uint64_t burn_in) {
  if (params.N < 1) throw ConfigurationError("init_chain: N must be >= 1");
  ChainState st;
  st.rng = Rng(seed);
  st.proposal_scale = initial_scale;
  st.burn_in = burn_in;
  IidSampler start(params.potential);
  st.config = make_configuration(params, start.draw_many(params.N, st.rng));
  return st;
}

double integrated_autocorrelation(const std::vector<double>& series) {
  std::size_t m = series.size();
  if (m < 8) return 1.0;
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (double v : series) var += (v - mean) * (v - mean);
  var /= static_cast<double>(m);
  if (var <= 0.0) return 1.0;
  double tau = 1.0;
  for (std::size_t lag = 1; lag < m / 2; ++lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < m; ++i)
      c += (series[i] - mean) * (series[i + lag] - mean);
    c /= static_cast<double>(m - lag) * var;
    tau += 2.0 * c;
    if (static_cast<double>(lag) >= 5.0 * tau) break;  // self-consistent cutoff
  }
  return std::max(1.0, tau);
}

ChainRun run_chain(const GasParameters& params, const ChainOptions& opts) {
  std::uint64_t n = static_cast<std::uint64_t>(params.N);
  std::uint64_t burn = opts.burn_in == UINT64_MAX ? 10 * n * n : opts.burn_in;
  std::uint64_t thin = opts.thin == 0 ? n : opts.thin;

  ChainState st = init_chain(params, opts.seed, opts.initial_scale, burn);
  ChainRun run;

  for (std::uint64_t k = 0; k < burn; ++k) mh_step(params, st);

  std::uint64_t recorded_accepts = 0, recorded_steps = 0;
  std::vector<double> m2_series;
  for (std::uint64_t k = 0; k < opts.steps; ++k) {
    if (mh_step(params, st)) ++recorded_accepts;
    ++recorded_steps;
    if (opts.record_frames && (k + 1) % thin == 0) {
      run.frames.push_back(st.config.positions);
      double m2 = 0.0;
      for (double x : st.config.positions) m2 += x * x;
      m2_series.push_back(m2);
    }
  }

  run.acceptance_rate = recorded_steps > 0
                            ? static_cast<double>(recorded_accepts) /
                                  static_cast<double>(recorded_steps)
                            : st.acceptance_rate();
  run.final_scale = st.proposal_scale;
  run.tau_int = integrated_autocorrelation(m2_series);
  if (recorded_steps > 0 &&
      (run.acceptance_rate < 0.1 || run.acceptance_rate > 0.6))
    run.warnings.push_back("acceptance rate " + std::to_string(run.acceptance_rate) +
                           " outside [0.1, 0.6] after freeze");
  return run;
}

}
