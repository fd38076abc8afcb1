#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mfgas/local.hpp"
#include "mfgas/rng.hpp"

namespace mfgas {

struct WindowStats {
  Window window;
  std::vector<std::uint64_t> counts;  // one entry per replica
  double mean = 0.0;
  double variance = 0.0;
  double dispersion = 0.0;  // variance / mean, 0 when mean = 0
};

struct CorrelationHistogram {
  int order = 1;  // k
  double lo = 0.0;
  double h = 0.0;
  std::vector<double> value;        // estimated R^(k)
  std::vector<double> raw;          // underlying counts
  std::vector<bool> undersampled;   // raw < 10, flagged not failed
  std::vector<std::string> notes;

  int bins() const { return static_cast<int>(value.size()); }
  double center(int b) const { return lo + (b + 0.5) * h; }
};

struct StatReport {
  int replicas = 0;
  std::vector<WindowStats> windows;
  std::vector<double> gaps;  // pooled nearest-neighbor gaps, sorted (1D)
  std::vector<std::pair<std::string, double>> ks;  // named KS distances
  CorrelationHistogram r1, r2;
  std::vector<std::string> notes;
};

std::string to_json_string(const StatReport& report);

// Per-window count statistics across replica samples.
// Throws ConfigurationError on an empty sample set; fewer than 30
// replicas is recorded as a note.
StatReport count_in_windows(const std::vector<PointSample>& samples,
                            const std::vector<Window>& windows);

// Pooled nearest-neighbor gaps of 1D samples, sorted ascending.
std::vector<double> gap_statistics(const std::vector<PointSample>& samples);

// R^(1): intensity profile along the first coordinate, normalized per unit
// volume.  R^(2) (1D only): displacement histogram over |x_i - x_j| with the
// (L - r) edge correction, normalized so a homogeneous Poisson process of
// rate rho gives rho^2 across bins.
CorrelationHistogram estimate_correlations(const std::vector<PointSample>& samples, int k,
                                           int bins);

// Exact sup distance between the empirical CDF and a monotone target CDF.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

// Asymptotic two-sided KS acceptance thresholds.
double ks_threshold_95(std::size_t m);  // 1.36 / sqrt(m)
double ks_threshold_99(std::size_t m);  // 1.63 / sqrt(m)

struct GofResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int classes = 0;
  std::vector<std::string> notes;
};

// Chi-square goodness of fit of count data against Poisson(lambda).
// Classes over {0, 1, ..., tail} merged so every expected count is >= 5.
// Known lambda: dof = classes - 1; lambda estimated from the data
// (lambda < 0 requests this): dof = classes - 2.
GofResult chi2_poisson_gof(const std::vector<std::uint64_t>& counts, double lambda);

struct DispersionResult {
  double index = 1.0;
  double p_value = 1.0;
};

// Index of dispersion with the (m-1) I ~ chi^2_{m-1} two-sided p-value.
DispersionResult dispersion_test(const std::vector<std::uint64_t>& counts);

// Synthetic generators for self-tests and calibration.
PointSample synthetic_poisson_homogeneous(double rate, const Window& window, Rng& rng);
// intensity e^{-x_1}, uniform in the transverse coordinates
PointSample synthetic_poisson_edge(const Window& window, Rng& rng);

struct EdgeCountCheck {
  double t = 0.0;
  double observed_mean = 0.0;
  double target_mean = 0.0;  // integral of e^{-x_1} over [t, x_hi] x transverse
  GofResult gof;             // estimated-mean Poisson shape test
  bool shape_ok = true;
  bool mean_ok = true;
};

// Count checks in the half-open boxes [t, x_hi] x transverse for each t.
// Shape: chi-square against a Poisson family, Bonferroni-adjusted over the
// t list.  Mean: |observed - target| within 3 standard errors plus
// 3 * margin_budget * target, the budget absorbing the recorded frame
// calibration error at finite N.
std::vector<EdgeCountCheck> edge_poisson_checks(const std::vector<PointSample>& samples,
                                                const std::vector<double>& ts, double x_hi,
                                                double level, double margin_budget);

}
