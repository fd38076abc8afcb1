#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfgas/chain.hpp"
#include "mfgas/equilibrium.hpp"
#include "mfgas/gas.hpp"

namespace mfgas {

// Flat dotted-key experiment description (kernel.family, potential.alpha,
// run.seed, ...).  Files are line-oriented `key = value` with # comments;
// every field has a default, so recipes only list what they change.
// parse_config(serialize_config(c)) == c holds exactly.
struct ExperimentConfig {
  // kernel.*
  std::string kernel_family = "log";  // log | riesz
  double kernel_s = 0.5;
  // potential.*
  std::string potential_family = "power";  // power | gaussian | tabulated
  double potential_alpha = 2.0;
  std::string potential_table;  // CSV path (x,value per line) for tabulated
  // model.*
  int dimension = 1;
  double gamma = 1.0;
  double beta_override = -1.0;  // >= 0 pins beta instead of gamma / N
  // run.*
  long long N = 256;
  int replicas = 100;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  std::string out_dir = "out";
  // sampler.*
  std::string sampler_kind = "auto";  // auto | mcmc | tridiag | iid
  long long sampler_steps = -1;       // -1: module default
  long long sampler_burn_in = -1;
  long long sampler_thin = -1;
  double sampler_initial_scale = 1.0;
  // equilibrium.*
  int equilibrium_cells = 2048;
  double equilibrium_domain_halfwidth = 0.0;  // 0: automatic from the tail rule
  double equilibrium_tol = 1e-9;
  int equilibrium_max_iter = 2000;
  double equilibrium_damping = 0.5;
  // stats.*
  double stats_window_halfwidth = 5.0;
  int stats_bins = 24;
  double stats_level = 0.01;
  // bulk.* / edge.*
  double bulk_center = 0.0;
  double edge_direction = 1.0;  // sign in 1D, angle in radians in 2D
  std::string edge_t_values = "0,0.5,1,1.5,2";
  // gumbel.*
  double gumbel_ks_threshold = 0.10;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& c);

struct Finding {
  enum class Severity { Error, Warning } severity;
  std::string key;
  std::string message;
};

// Static checks: Riesz integrability (s < n), confinement strength for the
// log kernel, sampler applicability, grid/domain sanity.  Returns findings
// rather than throwing; an empty list means the config is runnable.
std::vector<Finding> validate(const ExperimentConfig& c);

// Builders used by the CLI and the pipeline.
InteractionKernel make_kernel(const ExperimentConfig& c);
Potential make_potential(const ExperimentConfig& c);
GasParameters make_gas(const ExperimentConfig& c);
SolveOptions make_solve_options(const ExperimentConfig& c);
ChainOptions make_chain_options(const ExperimentConfig& c);

// Comma-separated doubles (edge.t_values).
std::vector<double> parse_double_list(const std::string& text);

}
