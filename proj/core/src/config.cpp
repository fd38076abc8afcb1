#include "mfgas/config.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mfgas/errors.hpp"

namespace mfgas {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double_value(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigurationError("config key " + key + ": expected a number, got '" + v + "'");
  return out;
}

long long parse_int_value(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long long out = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigurationError("config key " + key + ": expected an integer, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigurationError("config key " + key + ": expected an integer, got '" + v + "'");
  return out;
}

std::string parse_string_value(const std::string& key, const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size()) ++i;
      out.push_back(v[i]);
    }
    return out;
  }
  if (!v.empty() && v.front() != '"') return v;  // bare word
  throw ConfigurationError("config key " + key + ": malformed string value " + v);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters;
  auto dbl = [&](const char* key, double& field) {
    setters[key] = [&field](const std::string& k, const std::string& v) {
      field = parse_double_value(k, v);
    };
  };
  auto intf = [&](const char* key, auto& field) {
    setters[key] = [&field](const std::string& k, const std::string& v) {
      field = static_cast<std::decay_t<decltype(field)>>(parse_int_value(k, v));
    };
  };
  auto str = [&](const char* key, std::string& field) {
    setters[key] = [&field](const std::string& k, const std::string& v) {
      field = parse_string_value(k, v);
    };
  };
  str("kernel.family", c.kernel_family);
  dbl("kernel.s", c.kernel_s);
  str("potential.family", c.potential_family);
  dbl("potential.alpha", c.potential_alpha);
  str("potential.table", c.potential_table);
  intf("model.dimension", c.dimension);
  dbl("model.gamma", c.gamma);
  dbl("model.beta_override", c.beta_override);
  intf("run.N", c.N);
  intf("run.replicas", c.replicas);
  setters["run.seed"] = [&c](const std::string& k, const std::string& v) {
    c.seed = parse_u64_value(k, v);
  };
  intf("run.threads", c.threads);
  str("run.out_dir", c.out_dir);
  str("sampler.kind", c.sampler_kind);
  intf("sampler.steps", c.sampler_steps);
  intf("sampler.burn_in", c.sampler_burn_in);
  intf("sampler.thin", c.sampler_thin);
  dbl("sampler.initial_scale", c.sampler_initial_scale);
  intf("equilibrium.cells", c.equilibrium_cells);
  dbl("equilibrium.domain_halfwidth", c.equilibrium_domain_halfwidth);
  dbl("equilibrium.tol", c.equilibrium_tol);
  intf("equilibrium.max_iter", c.equilibrium_max_iter);
  dbl("equilibrium.damping", c.equilibrium_damping);
  dbl("stats.window_halfwidth", c.stats_window_halfwidth);
  intf("stats.bins", c.stats_bins);
  dbl("stats.level", c.stats_level);
  dbl("bulk.center", c.bulk_center);
  dbl("edge.direction", c.edge_direction);
  str("edge.t_values", c.edge_t_values);
  dbl("gumbel.ks_threshold", c.gumbel_ks_threshold);

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments outside quotes
    bool quoted = false;
    std::string body;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      if (ch == '#' && !quoted) break;
      body.push_back(ch);
    }
    body = trim(body);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigurationError("config line " + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end())
      throw ConfigurationError("unknown config key: " + key);
    it->second(key, value);
  }
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "kernel.family = " << quote(c.kernel_family) << "\n";
  out << "kernel.s = " << fmt_double(c.kernel_s) << "\n";
  out << "potential.family = " << quote(c.potential_family) << "\n";
  out << "potential.alpha = " << fmt_double(c.potential_alpha) << "\n";
  out << "potential.table = " << quote(c.potential_table) << "\n";
  out << "model.dimension = " << c.dimension << "\n";
  out << "model.gamma = " << fmt_double(c.gamma) << "\n";
  out << "model.beta_override = " << fmt_double(c.beta_override) << "\n";
  out << "run.N = " << c.N << "\n";
  out << "run.replicas = " << c.replicas << "\n";
  out << "run.seed = " << c.seed << "\n";
  out << "run.threads = " << c.threads << "\n";
  out << "run.out_dir = " << quote(c.out_dir) << "\n";
  out << "sampler.kind = " << quote(c.sampler_kind) << "\n";
  out << "sampler.steps = " << c.sampler_steps << "\n";
  out << "sampler.burn_in = " << c.sampler_burn_in << "\n";
  out << "sampler.thin = " << c.sampler_thin << "\n";
  out << "sampler.initial_scale = " << fmt_double(c.sampler_initial_scale) << "\n";
  out << "equilibrium.cells = " << c.equilibrium_cells << "\n";
  out << "equilibrium.domain_halfwidth = " << fmt_double(c.equilibrium_domain_halfwidth)
      << "\n";
  out << "equilibrium.tol = " << fmt_double(c.equilibrium_tol) << "\n";
  out << "equilibrium.max_iter = " << c.equilibrium_max_iter << "\n";
  out << "equilibrium.damping = " << fmt_double(c.equilibrium_damping) << "\n";
  out << "stats.window_halfwidth = " << fmt_double(c.stats_window_halfwidth) << "\n";
  out << "stats.bins = " << c.stats_bins << "\n";
  out << "stats.level = " << fmt_double(c.stats_level) << "\n";
  out << "bulk.center = " << fmt_double(c.bulk_center) << "\n";
  out << "edge.direction = " << fmt_double(c.edge_direction) << "\n";
  out << "edge.t_values = " << quote(c.edge_t_values) << "\n";
  out << "gumbel.ks_threshold = " << fmt_double(c.gumbel_ks_threshold) << "\n";
  return out.str();
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    out.push_back(parse_double_value("edge.t_values", token));
  }
  return out;
}

std::vector<Finding> validate(const ExperimentConfig& c) {
  std::vector<Finding> out;
  auto error = [&](const char* key, const std::string& msg) {
    out.push_back({Finding::Severity::Error, key, msg});
  };
  auto warning = [&](const char* key, const std::string& msg) {
    out.push_back({Finding::Severity::Warning, key, msg});
  };

  if (c.kernel_family != "log" && c.kernel_family != "riesz")
    error("kernel.family", "must be 'log' or 'riesz'");
  if (c.kernel_family == "riesz") {
    if (c.kernel_s <= 0.0) error("kernel.s", "s must be > 0");
    else if (c.kernel_s >= c.dimension)
      error("kernel.s", "s must be < n for an integrable singularity");
    if (c.dimension == 2 && c.kernel_s >= 1.0)
      error("kernel.s", "2D radial quadrature supports riesz s < 1 only");
  }

  if (c.potential_family != "power" && c.potential_family != "gaussian" &&
      c.potential_family != "tabulated")
    error("potential.family", "must be 'power', 'gaussian', or 'tabulated'");
  if (c.potential_family == "power" && c.potential_alpha <= 0.0)
    error("potential.alpha", "potential.alpha must be > 0");
  if (c.potential_family == "tabulated" && c.potential_table.empty())
    error("potential.table", "tabulated potential needs a table file");
  if (c.kernel_family == "log" && c.potential_family == "tabulated")
    warning("potential.table",
            "log-kernel gases are only confined when V(x) outgrows kappa*log(1+|x|) "
            "for every kappa; tabulated tails cannot be checked beyond the table end");

  if (c.dimension < 1 || c.dimension > 2)
    error("model.dimension", "supported dimensions are 1 and 2");
  if (c.gamma < 0.0) error("model.gamma", "gamma must be >= 0");
  if (c.N < 1) error("run.N", "N must be >= 1");
  if (c.replicas < 1) error("run.replicas", "replicas must be >= 1");
  if (c.stats_level <= 0.0 || c.stats_level >= 1.0)
    error("stats.level", "test level must lie in (0, 1)");

  if (c.sampler_kind != "auto" && c.sampler_kind != "mcmc" && c.sampler_kind != "tridiag" &&
      c.sampler_kind != "iid")
    error("sampler.kind", "must be 'auto', 'mcmc', 'tridiag', or 'iid'");
  if (c.sampler_kind == "tridiag") {
    if (c.kernel_family != "log" || c.dimension != 1 ||
        !(c.potential_family == "power" && c.potential_alpha == 2.0))
      error("sampler.kind",
            "the tridiagonal sampler is exact only for the 1D log kernel with V = x^2");
  }

  if (c.equilibrium_cells < 8) error("equilibrium.cells", "grid needs at least 8 cells");
  if (c.equilibrium_damping <= 0.0 || c.equilibrium_damping > 1.0)
    error("equilibrium.damping", "damping must lie in (0, 1]");
  if (c.equilibrium_domain_halfwidth > 0.0 && c.potential_family != "tabulated") {
    // manual domain: check the tail is actually negligible there
    const double kappa = c.kernel_family == "log" ? c.gamma + 1.0 : 0.0;
    const double r = c.equilibrium_domain_halfwidth;
    double v_edge;
    if (c.potential_family == "power")
      v_edge = std::pow(r, c.potential_alpha);
    else
      v_edge = r * r / 2.0;
    if (v_edge - kappa * std::log1p(r) < 27.0)
      warning("equilibrium.domain_halfwidth",
              "domain may truncate the equilibrium density; the tilted tail at the "
              "boundary is above e^{-27}");
  }
  return out;
}

InteractionKernel make_kernel(const ExperimentConfig& c) {
  if (c.kernel_family == "riesz") return InteractionKernel::riesz(c.kernel_s, c.dimension);
  return InteractionKernel::log_kernel(c.dimension);
}

Potential make_potential(const ExperimentConfig& c) {
  if (c.potential_family == "gaussian") return Potential::gaussian(c.dimension);
  if (c.potential_family == "tabulated") {
    std::ifstream in(c.potential_table);
    if (!in) throw ConfigurationError("cannot open potential table: " + c.potential_table);
    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      std::string a, b;
      if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
        throw ConfigurationError("potential table rows must be 'x,value': " + line);
      xs.push_back(parse_double_value("potential.table", trim(a)));
      vs.push_back(parse_double_value("potential.table", trim(b)));
    }
    return Potential::tabulated(std::move(xs), std::move(vs), c.dimension);
  }
  return Potential::power(c.potential_alpha, c.dimension);
}

GasParameters make_gas(const ExperimentConfig& c) {
  GasParameters g{make_kernel(c), make_potential(c), static_cast<int>(c.N), c.gamma,
                  c.beta_override};
  return g;
}

SolveOptions make_solve_options(const ExperimentConfig& c) {
  SolveOptions o;
  o.cells = c.equilibrium_cells;
  o.domain_halfwidth = c.equilibrium_domain_halfwidth;
  o.tol = c.equilibrium_tol;
  o.max_iter = c.equilibrium_max_iter;
  o.damping = c.equilibrium_damping;
  return o;
}

ChainOptions make_chain_options(const ExperimentConfig& c) {
  ChainOptions o;
  o.seed = c.seed;
  o.initial_scale = c.sampler_initial_scale;
  if (c.sampler_steps >= 0) o.steps = static_cast<std::uint64_t>(c.sampler_steps);
  if (c.sampler_burn_in >= 0) o.burn_in = static_cast<std::uint64_t>(c.sampler_burn_in);
  if (c.sampler_thin >= 0) o.thin = static_cast<std::uint64_t>(c.sampler_thin);
  return o;
}

}
