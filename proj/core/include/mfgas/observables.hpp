#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfgas/gas.hpp"

namespace mfgas {

// X_N(u) = (1/N) sum_j g(u, x_j).
double empirical_field(const GasParameters& params, const std::vector<double>& positions,
                       const Vec& u);

struct PartitionRatioOptions {
  int replicas = 32;
  std::uint64_t steps_per_replica = 0;   // 0: 30 sweeps of the (N-1)-gas
  std::uint64_t burn_in = UINT64_MAX;    // UINT64_MAX: 100 sweeps
  std::uint64_t thin = 0;                // 0: one sweep
  int probes_per_frame = 8;              // independent u draws per recorded frame
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct PartitionRatioEstimate {
  double value = 0.0;    // estimate of Z_N / Z_{N-1}
  double stderr_ = 0.0;  // across replicas
  double l0 = 0.0;
  std::vector<std::string> warnings;
};

// Monte Carlo estimate of Z_N / Z_{N-1} = L_0 * E[e^{-beta (N-1) X_{N-1}(u)}]
// with u ~ mu_0 independent of an (N-1)-particle gas at the same beta.
PartitionRatioEstimate estimate_partition_ratio(const GasParameters& params,
                                                const PartitionRatioOptions& opts);

struct Histogram {
  double lo = 0.0;
  double h = 0.0;
  std::vector<double> counts;
  std::vector<double> density;  // counts / (total * h)
  std::uint64_t total = 0;

  int bins() const { return static_cast<int>(counts.size()); }
  double center(int b) const { return lo + (static_cast<double>(b) + 0.5) * h; }
};

// Pooled single-particle histogram over 1D position lists.
Histogram density_of_states_histogram(const std::vector<std::vector<double>>& position_sets,
                                      double lo, double hi, int bins);

}
