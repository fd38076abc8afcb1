#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfgas/gas.hpp"
#include "mfgas/rng.hpp"

namespace mfgas {

// Metropolis chain over configurations: single-particle isotropic Gaussian
// proposals, acceptance min(1, e^{-dH}).  The proposal scale adapts toward
// 0.3 acceptance during burn-in and is frozen afterwards.
struct ChainState {
  ParticleConfiguration config;
  Rng rng;
  double proposal_scale = 1.0;
  std::uint64_t steps = 0;
  std::uint64_t accepted = 0;
  std::uint64_t burn_in = 0;  // adaptation window, in single-particle steps
  // adaptation bookkeeping
  std::uint64_t window_steps = 0;
  std::uint64_t window_accepted = 0;

  bool adapting() const { return steps < burn_in; }
  double acceptance_rate() const {
    return steps == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(steps);
  }
};

// One single-particle proposal; returns true when accepted.
bool mh_step(const GasParameters& params, ChainState& state);

struct ChainOptions {
  std::uint64_t steps = 0;        // recorded phase, single-particle proposals
  std::uint64_t burn_in = UINT64_MAX;  // default 10 * N sweeps
  std::uint64_t thin = 0;         // steps between recorded frames, default N
  std::uint64_t seed = 1;
  double initial_scale = 1.0;
  bool record_frames = true;
};

struct ChainRun {
  std::vector<std::vector<double>> frames;  // flat positions per recorded frame
  double acceptance_rate = 0.0;
  double final_scale = 0.0;
  double tau_int = 1.0;  // integrated autocorrelation of sum x^2 across frames
  std::vector<std::string> warnings;
};

// Runs burn-in + steps proposals, recording every thin steps.
// Deterministic per (params, options, seed).
ChainRun run_chain(const GasParameters& params, const ChainOptions& opts);

// Fresh chain state with i.i.d. mu_0 start positions.
ChainState init_chain(const GasParameters& params, std::uint64_t seed, double initial_scale,
                      std::uint64_t burn_in);

// Integrated autocorrelation time of a scalar series via the
// self-consistent truncation window.
double integrated_autocorrelation(const std::vector<double>& series);

}
