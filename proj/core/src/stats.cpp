#include "mfgas/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <nlohmann/json.hpp>

#include "mfgas/errors.hpp"

namespace mfgas {

namespace {

double transverse_measure(const Window& w) {
  double v = 1.0;
  for (int d = 1; d < w.lo.n; ++d) v *= w.hi[d] - w.lo[d];
  return v;
}

}  // namespace

StatReport count_in_windows(const std::vector<PointSample>& samples,
                            const std::vector<Window>& windows) {
  if (samples.empty()) throw ConfigurationError("count_in_windows: empty sample set");
  StatReport report;
  report.replicas = static_cast<int>(samples.size());
  if (report.replicas < 30)
    report.notes.push_back("fewer than 30 replicas; count statistics are noisy");
  for (const auto& w : windows) {
    WindowStats ws;
    ws.window = w;
    ws.counts.reserve(samples.size());
    for (const auto& s : samples) {
      std::uint64_t c = 0;
      for (const auto& p : s.points)
        if (w.contains(p)) ++c;
      ws.counts.push_back(c);
    }
    const double m = static_cast<double>(ws.counts.size());
    double mean = 0.0;
    for (auto c : ws.counts) mean += static_cast<double>(c);
    mean /= m;
    double var = 0.0;
    for (auto c : ws.counts) {
      const double d = static_cast<double>(c) - mean;
      var += d * d;
    }
    var /= std::max(1.0, m - 1.0);
    ws.mean = mean;
    ws.variance = var;
    ws.dispersion = mean > 0.0 ? var / mean : 0.0;
    report.windows.push_back(std::move(ws));
  }
  return report;
}

std::vector<double> gap_statistics(const std::vector<PointSample>& samples) {
  if (samples.empty()) throw ConfigurationError("gap_statistics: empty sample set");
  std::vector<double> gaps;
  for (const auto& s : samples) {
    if (s.dim != 1)
      throw ConfigurationError("gap_statistics is defined for 1D samples only");
    const auto xs = s.first_coordinates();  // already sorted
    for (std::size_t i = 1; i < xs.size(); ++i) gaps.push_back(xs[i] - xs[i - 1]);
  }
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

CorrelationHistogram estimate_correlations(const std::vector<PointSample>& samples, int k,
                                           int bins) {
  if (k != 1 && k != 2)
    throw ConfigurationError("correlation estimation supports k = 1 and k = 2 only");
  if (samples.empty()) throw ConfigurationError("estimate_correlations: empty sample set");
  if (bins < 1) throw ConfigurationError("estimate_correlations: bins must be positive");

  CorrelationHistogram hist;
  hist.order = k;
  const int replicas = static_cast<int>(samples.size());
  if (replicas < 100)
    hist.notes.push_back("fewer than 100 replicas; correlation estimates are noisy");
  const Window& w = samples.front().window;
  const int dim = samples.front().dim;

  if (k == 1) {
    hist.lo = w.lo[0];
    const double span = w.hi[0] - w.lo[0];
    hist.h = span / bins;
    hist.raw.assign(static_cast<std::size_t>(bins), 0.0);
    for (const auto& s : samples)
      for (const auto& p : s.points) {
        const int b = std::min(bins - 1, static_cast<int>((p[0] - hist.lo) / hist.h));
        if (b >= 0) hist.raw[static_cast<std::size_t>(b)] += 1.0;
      }
    const double tv = transverse_measure(w);
    for (double c : hist.raw)
      hist.value.push_back(c / (replicas * hist.h * tv));
  } else {
    if (dim != 1)
      throw ConfigurationError("pair correlation histogram is implemented for 1D samples");
    const double L = w.hi[0] - w.lo[0];
    const double rmax = L / 2.0;
    hist.lo = 0.0;
    hist.h = rmax / bins;
    hist.raw.assign(static_cast<std::size_t>(bins), 0.0);
    for (const auto& s : samples) {
      const auto xs = s.first_coordinates();
      for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
          const double r = xs[j] - xs[i];  // sorted, nonnegative
          if (r >= rmax) break;
          hist.raw[static_cast<std::size_t>(r / hist.h)] += 1.0;
        }
    }
    for (int b = 0; b < bins; ++b) {
      const double r_mid = hist.center(b);
      hist.value.push_back(hist.raw[static_cast<std::size_t>(b)] /
                           (replicas * hist.h * (L - r_mid)));
    }
  }
  for (double c : hist.raw) hist.undersampled.push_back(c < 10.0);
  return hist;
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw ConfigurationError("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double m = static_cast<double>(sample.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    sup = std::max(sup, std::abs(f - static_cast<double>(i + 1) / m));
    sup = std::max(sup, std::abs(f - static_cast<double>(i) / m));
  }
  return sup;
}

double ks_threshold_95(std::size_t m) { return 1.36 / std::sqrt(static_cast<double>(m)); }
double ks_threshold_99(std::size_t m) { return 1.63 / std::sqrt(static_cast<double>(m)); }

namespace {

double poisson_pmf(int j, double lambda) {
  if (lambda <= 0.0) return j == 0 ? 1.0 : 0.0;
  return std::exp(j * std::log(lambda) - lambda - std::lgamma(j + 1.0));
}

}  // namespace

GofResult chi2_poisson_gof(const std::vector<std::uint64_t>& counts, double lambda) {
  GofResult out;
  if (counts.size() < 2) throw ConfigurationError("chi2_poisson_gof: need at least 2 counts");
  const double m = static_cast<double>(counts.size());
  const bool estimated = lambda < 0.0;
  if (estimated) {
    double mean = 0.0;
    for (auto c : counts) mean += static_cast<double>(c);
    lambda = mean / m;
    out.notes.push_back("lambda estimated from the sample mean");
  }
  std::uint64_t kmax = 0;
  for (auto c : counts) kmax = std::max(kmax, c);

  // observed frequency of each count value, last cell holds the upper tail
  std::vector<double> observed(kmax + 2, 0.0);
  for (auto c : counts) observed[c] += 1.0;
  std::vector<double> expected(kmax + 2, 0.0);
  double cum = 0.0;
  for (std::uint64_t j = 0; j <= kmax; ++j) {
    const double p = poisson_pmf(static_cast<int>(j), lambda);
    expected[j] = m * p;
    cum += p;
  }
  expected[kmax + 1] = m * std::max(0.0, 1.0 - cum);

  // merge adjacent cells until every class expectation reaches 5
  std::vector<double> obs_cls, exp_cls;
  double o_acc = 0.0, e_acc = 0.0;
  for (std::size_t j = 0; j < expected.size(); ++j) {
    o_acc += observed[j];
    e_acc += expected[j];
    if (e_acc >= 5.0) {
      obs_cls.push_back(o_acc);
      exp_cls.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (!exp_cls.empty()) {
      obs_cls.back() += o_acc;
      exp_cls.back() += e_acc;
    } else {
      obs_cls.push_back(o_acc);
      exp_cls.push_back(e_acc);
    }
  }

  out.classes = static_cast<int>(obs_cls.size());
  double stat = 0.0;
  for (std::size_t j = 0; j < obs_cls.size(); ++j) {
    const double d = obs_cls[j] - exp_cls[j];
    stat += d * d / exp_cls[j];
  }
  out.statistic = stat;
  out.dof = out.classes - 1 - (estimated ? 1 : 0);
  if (out.dof < 1) {
    out.dof = 0;
    out.p_value = 1.0;
    out.notes.push_back("class table degenerate after merging; test uninformative");
    return out;
  }
  boost::math::chi_squared dist(out.dof);
  out.p_value = 1.0 - boost::math::cdf(dist, out.statistic);
  return out;
}

DispersionResult dispersion_test(const std::vector<std::uint64_t>& counts) {
  DispersionResult out;
  if (counts.size() < 2) throw ConfigurationError("dispersion_test: need at least 2 counts");
  const double m = static_cast<double>(counts.size());
  double mean = 0.0;
  for (auto c : counts) mean += static_cast<double>(c);
  mean /= m;
  double var = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - mean;
    var += d * d;
  }
  var /= (m - 1.0);
  if (mean <= 0.0) {
    out.index = 0.0;
    out.p_value = 1.0;
    return out;
  }
  out.index = var / mean;
  boost::math::chi_squared dist(m - 1.0);
  const double x = (m - 1.0) * out.index;
  const double lo_tail = boost::math::cdf(dist, x);
  out.p_value = 2.0 * std::min(lo_tail, 1.0 - lo_tail);
  return out;
}

PointSample synthetic_poisson_homogeneous(double rate, const Window& window, Rng& rng) {
  const int dim = window.lo.n;
  const double vol = window.volume();
  std::poisson_distribution<int> card(rate * vol);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PointSample out;
  out.dim = dim;
  out.window = window;
  out.frame = FrameRecord{"synthetic", 0, Vec::zero(dim), 1.0, Vec::zero(dim), 0.0};
  const int count = card(rng);
  out.points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Vec p = Vec::zero(dim);
    for (int d = 0; d < dim; ++d)
      p[d] = window.lo[d] + (window.hi[d] - window.lo[d]) * unif(rng);
    out.points.push_back(p);
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
  return out;
}

PointSample synthetic_poisson_edge(const Window& window, Rng& rng) {
  const int dim = window.lo.n;
  const double a = window.lo[0], b = window.hi[0];
  const double mass_x = std::exp(-a) - std::exp(-b);
  const double total = mass_x * transverse_measure(window);
  std::poisson_distribution<int> card(total);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PointSample out;
  out.dim = dim;
  out.window = window;
  out.frame = FrameRecord{"synthetic", 0, Vec::zero(dim), 1.0, Vec::zero(dim), 0.0};
  const int count = card(rng);
  out.points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Vec p = Vec::zero(dim);
    // inverse CDF of the e^{-x} profile restricted to [a, b]
    p[0] = -std::log(std::exp(-a) - unif(rng) * mass_x);
    for (int d = 1; d < dim; ++d)
      p[d] = window.lo[d] + (window.hi[d] - window.lo[d]) * unif(rng);
    out.points.push_back(p);
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const Vec& a_, const Vec& b_) { return a_[0] < b_[0]; });
  return out;
}

std::vector<EdgeCountCheck> edge_poisson_checks(const std::vector<PointSample>& samples,
                                                const std::vector<double>& ts, double x_hi,
                                                double level, double margin_budget) {
  if (samples.empty()) throw ConfigurationError("edge_poisson_checks: empty sample set");
  if (ts.empty()) throw ConfigurationError("edge_poisson_checks: no t values");
  const int dim = samples.front().dim;
  const Window& base = samples.front().window;
  const double R = static_cast<double>(samples.size());
  const double bonferroni = level / static_cast<double>(ts.size());

  std::vector<EdgeCountCheck> out;
  for (double t : ts) {
    Window w = base;
    w.lo[0] = t;
    w.hi[0] = x_hi;
    double transverse = 1.0;
    for (int d = 1; d < dim; ++d) transverse *= w.hi[d] - w.lo[d];
    EdgeCountCheck check;
    check.t = t;
    check.target_mean = (std::exp(-t) - std::exp(-x_hi)) * transverse;

    std::vector<std::uint64_t> counts;
    counts.reserve(samples.size());
    double total = 0.0;
    for (const auto& s : samples) {
      std::uint64_t c = 0;
      for (const auto& p : s.points)
        if (w.contains(p)) ++c;
      counts.push_back(c);
      total += static_cast<double>(c);
    }
    check.observed_mean = total / R;
    check.gof = chi2_poisson_gof(counts, -1.0);
    check.shape_ok = check.gof.dof < 1 || check.gof.p_value >= bonferroni;
    const double tol =
        3.0 * std::sqrt(check.target_mean / R) + 3.0 * margin_budget * check.target_mean;
    check.mean_ok = std::abs(check.observed_mean - check.target_mean) <= tol;
    out.push_back(std::move(check));
  }
  return out;
}

std::string to_json_string(const StatReport& report) {
  nlohmann::json j;
  j["replicas"] = report.replicas;
  j["notes"] = report.notes;
  nlohmann::json jw = nlohmann::json::array();
  for (const auto& ws : report.windows) {
    nlohmann::json one;
    std::vector<double> lo(ws.window.lo.n), hi(ws.window.hi.n);
    for (int d = 0; d < ws.window.lo.n; ++d) {
      lo[static_cast<std::size_t>(d)] = ws.window.lo[d];
      hi[static_cast<std::size_t>(d)] = ws.window.hi[d];
    }
    one["lo"] = lo;
    one["hi"] = hi;
    one["mean"] = ws.mean;
    one["variance"] = ws.variance;
    one["dispersion"] = ws.dispersion;
    jw.push_back(one);
  }
  j["windows"] = jw;
  j["gap_count"] = report.gaps.size();
  nlohmann::json jks = nlohmann::json::object();
  for (const auto& [name, value] : report.ks) jks[name] = value;
  j["ks"] = jks;
  auto hist_json = [](const CorrelationHistogram& h) {
    nlohmann::json out;
    out["order"] = h.order;
    out["lo"] = h.lo;
    out["h"] = h.h;
    out["value"] = h.value;
    out["raw"] = h.raw;
    std::vector<int> flags;
    flags.reserve(h.undersampled.size());
    for (bool u : h.undersampled) flags.push_back(u ? 1 : 0);
    out["undersampled"] = flags;
    out["notes"] = h.notes;
    return out;
  };
  if (!report.r1.value.empty()) j["r1"] = hist_json(report.r1);
  if (!report.r2.value.empty()) j["r2"] = hist_json(report.r2);
  return j.dump(2);
}

}
