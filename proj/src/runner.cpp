#include "stablespec/runner.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <variant>

#include "stablespec/catalog.hpp"
#include "stablespec/covering.hpp"
#include "stablespec/error.hpp"
#include "stablespec/lab.hpp"
#include "stablespec/summability.hpp"

namespace stablespec {

namespace {

const std::set<std::string> kKinds{"fidi", "autocov-scaling", "qform-tails", "remainder", "covering", "coeffs",
                                   "simulate"};

constexpr std::uint64_t kCalibrationStream = 5;

// Typed access to one JSON object; type problems are config errors, value
// problems are precondition errors.
class Reader {
 public:
  Reader(const Json& j, std::string prefix) : j_(j), prefix_(std::move(prefix)) {
    if (!j_.is_object()) throw ConfigError(prefix_.empty() ? "config" : prefix_, "expected a JSON object");
  }

  std::string field(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& get(const std::string& key) const {
    if (!j_.contains(key)) throw ConfigError(field(key), "missing required field");
    return j_.at(key);
  }

  double number(const std::string& key) const {
    const Json& v = get(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    return v.get<double>();
  }
  double number_or(const std::string& key, double def) const { return has(key) ? number(key) : def; }

  long long integer(const std::string& key) const {
    const Json& v = get(key);
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    throw ConfigError(field(key), "expected an integer");
  }

  std::size_t count(const std::string& key, std::size_t min_value) const {
    const long long v = integer(key);
    if (v < static_cast<long long>(min_value)) {
      throw ParameterDomainError(field(key), key + " must be >= " + std::to_string(min_value));
    }
    return static_cast<std::size_t>(v);
  }
  std::size_t count_or(const std::string& key, std::size_t min_value, std::size_t def) const {
    return has(key) ? count(key, min_value) : def;
  }

  std::uint64_t seed(const std::string& key, std::uint64_t def) const {
    if (!has(key)) return def;
    const Json& v = get(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) throw ParameterDomainError(field(key), "seed must be nonnegative");
    throw ConfigError(field(key), "expected a nonnegative integer");
  }

  bool boolean_or(const std::string& key, bool def) const {
    if (!has(key)) return def;
    const Json& v = get(key);
    if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) const {
    const Json& v = get(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }
  std::string string_or(const std::string& key, const std::string& def) const { return has(key) ? string(key) : def; }

  std::vector<double> numbers(const std::string& key) const {
    const Json& v = get(key);
    if (!v.is_array()) throw ConfigError(field(key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(field(key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::size_t> sizes(const std::string& key) const {
    const Json& v = get(key);
    if (!v.is_array()) throw ConfigError(field(key), "expected an array of integers");
    std::vector<std::size_t> out;
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError(field(key), "expected an array of integers");
      const auto x = e.get<long long>();
      if (x < 0) throw ParameterDomainError(field(key), "entries must be nonnegative");
      out.push_back(static_cast<std::size_t>(x));
    }
    return out;
  }

  Reader object(const std::string& key) const { return Reader(get(key), field(key)); }
  const Json& json() const { return j_; }

 private:
  const Json& j_;
  std::string prefix_;
};

double read_alpha(const Reader& r) {
  const double a = r.number("alpha");
  if (!(a > 0.0 && a < 2.0)) {
    throw ParameterDomainError(r.field("alpha"), "alpha must lie in (0, 2), got " + format_double(a));
  }
  return a;
}

std::vector<std::size_t> read_n_grid(const Reader& r) {
  if (!r.has("n_grid")) return default_n_grid();
  auto grid = r.sizes("n_grid");
  if (grid.empty()) throw ParameterDomainError(r.field("n_grid"), "n_grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 2) throw ParameterDomainError(r.field("n_grid"), "every n must be at least 2");
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw ParameterDomainError(r.field("n_grid"), "n_grid must be strictly increasing");
    }
  }
  return grid;
}

std::optional<Catalog> read_catalog(const Reader& r, const std::filesystem::path& base) {
  if (!r.has("catalog")) return std::nullopt;
  const auto rel = r.string("catalog");
  const auto path = base / rel;
  if (!std::filesystem::exists(path)) {
    throw UnresolvedReferenceError(r.field("catalog"), "catalog file not found: " + rel);
  }
  return Catalog::load(path);
}

FunctionSpec read_function(const Json& j, const std::optional<Catalog>& catalog, const std::string& field) {
  return function_from_json(j, catalog ? &*catalog : nullptr, field);
}

FourierCoeffs read_coefficients(const Reader& r, const std::optional<Catalog>& catalog, std::size_t default_k) {
  const auto c = r.object("coefficients");
  const std::size_t K = c.count_or("K", 0, default_k);
  if (c.has("function")) return fourier_coeffs(read_function(c.get("function"), catalog, c.field("function")), K);
  if (c.has("geometric")) {
    const double q = c.number("geometric");
    if (!(std::abs(q) < 1.0)) throw ParameterDomainError(c.field("geometric"), "ratio must satisfy |r| < 1");
    return FourierCoeffs::geometric(q, K);
  }
  if (c.has("power")) {
    const double p = c.number("power");
    if (!(p > 0.0)) throw ParameterDomainError(c.field("power"), "exponent must be > 0");
    return FourierCoeffs::power(p, K);
  }
  if (c.has("unit")) {
    const std::size_t k = c.count("unit", 1);
    return FourierCoeffs::unit(k, std::max(K, k));
  }
  if (c.has("raw")) {
    const auto v = c.numbers("raw");
    for (double x : v) {
      if (!std::isfinite(x)) throw ParameterDomainError(c.field("raw"), "coefficients must be finite");
    }
    return FourierCoeffs::raw(v);
  }
  throw ConfigError(r.field("coefficients"), "expected one of function, geometric, power, unit, raw");
}

FunctionClass read_class(const Reader& r, const std::optional<Catalog>& catalog) {
  const auto c = r.object("class");
  if (c.has("functions")) {
    const Json& list = c.get("functions");
    if (!list.is_array() || list.empty()) throw ConfigError(c.field("functions"), "expected a nonempty array");
    FunctionClass cls;
    std::string desc = "catalog:";
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string field = c.field("functions") + "[" + std::to_string(i) + "]";
      cls.members.push_back(read_function(list[i], catalog, field));
      desc += (i ? "," : "") + cls.members.back().describe();
    }
    cls.discretization = desc;
    return cls;
  }
  const std::string family = c.string("family");
  if (family == "indicator") return FunctionClass::indicator_family(c.count("count", 1));
  if (family == "holder_cantor") {
    const double width = c.number("width");
    const double ratio = c.number_or("ratio", 0.25);
    const double lo = c.number("lo");
    const double hi = c.number("hi");
    const auto levels = c.count("levels", 0);
    if (!(width > 0.0)) throw ParameterDomainError(c.field("width"), "width must be > 0");
    if (!(ratio > 0.0 && ratio < 0.5)) throw ParameterDomainError(c.field("ratio"), "ratio must lie in (0, 0.5)");
    if (!(lo >= 0.0 && lo < hi && hi + width <= 3.141592653589793)) {
      throw ParameterDomainError(c.field("hi"), "need 0 <= lo < hi and hi + width <= pi");
    }
    if (levels > 16) throw ParameterDomainError(c.field("levels"), "at most 16 levels");
    return FunctionClass::holder_cantor_family(width, static_cast<int>(levels), ratio, lo, hi);
  }
  throw UnresolvedReferenceError(c.field("family"), "unknown class family '" + family + "'");
}

LinearFilter read_filter(const Reader& r, const std::string& key) {
  try {
    return LinearFilter::parse(r.string(key));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw ConfigError(r.field(key), e.what());
    throw ParameterDomainError(r.field(key), e.what());
  }
}

struct ScalesPlan {
  LimitScales scales;
  bool calibrate = false;
  CalibrationOptions options;
};

ScalesPlan read_scales(const Reader& r) {
  ScalesPlan plan;
  if (!r.has("scales")) return plan;
  const auto s = r.object("scales");
  const std::string mode = s.string_or("mode", "configured");
  if (mode == "configured") {
    plan.scales.sigma1 = s.number_or("sigma1", 1.0);
    plan.scales.sigma2 = s.number_or("sigma2", 1.0);
    try {
      plan.scales.validate();
    } catch (const Error& e) {
      throw ParameterDomainError(s.field(e.field()), e.what());
    }
  } else if (mode == "calibrated") {
    plan.calibrate = true;
    plan.options.reference_n = s.count_or("reference_n", 2, plan.options.reference_n);
    plan.options.replicates = s.count_or("replicates", 2, plan.options.replicates);
  } else {
    throw ConfigError(s.field("mode"), "mode must be \"configured\" or \"calibrated\"");
  }
  return plan;
}

struct FidiPlan {
  FidiConfig config;
  ScalesPlan scales;
};
struct QformPlan {
  std::vector<QuadraticFormSpec> specs;
  QformTailConfig config;
};
struct CoveringPlan {
  FunctionClass cls;
  double beta = 1.0;
  double alpha = 1.0;
  std::vector<double> eps_grid;
  std::vector<int> k_grid;
  std::optional<std::pair<double, double>> slope_window;
};
struct CoeffsPlan {
  FunctionSpec function;
  std::size_t K = 0;
  CoeffMethod method = CoeffMethod::kAuto;
};
struct SimulatePlan {
  std::size_t n = 0;
  double alpha = 1.5;
  std::optional<LinearFilter> filter;
  std::uint64_t seed = 1;
};

using Plan = std::variant<FidiPlan, AutocovScalingConfig, QformPlan, RemainderConfig, CoveringPlan, CoeffsPlan,
                          SimulatePlan>;

struct Built {
  Plan plan;
  Json diagnostics = Json::array();
  std::vector<std::string> warnings;
};

Built build(const ExperimentConfig& cfg) {
  const Reader r(cfg.raw, "");
  const auto catalog = read_catalog(r, cfg.base_dir);
  Built out{FidiPlan{}, Json::array(), {}};
  const std::uint64_t seed = cfg.seed;

  if (cfg.kind == "fidi") {
    FidiPlan p;
    p.config.alpha = read_alpha(r);
    p.config.n_grid = read_n_grid(r);
    p.config.replicates = r.count_or("replicates", 2, 1000);
    p.config.seed = seed;
    p.config.limit_draws = r.count_or("limit_draws", 0, 0);
    p.config.bootstrap = r.count_or("bootstrap", 2, 200);
    p.config.keep_samples = r.boolean_or("dump_samples", false);
    p.config.hill_fraction = r.number_or("hill_fraction", 0.05);
    if (!(p.config.hill_fraction > 0.0 && p.config.hill_fraction <= 0.1)) {
      throw ParameterDomainError("hill_fraction", "hill_fraction must lie in (0, 0.1]");
    }
    p.config.a = read_coefficients(r, catalog, p.config.n_grid.back() - 1);
    p.scales = read_scales(r);
    p.config.scales = p.scales.scales;
    const auto diag = ell_alpha_log_norm(p.config.a.a, p.config.alpha);
    out.diagnostics.push_back(Json{{"check", "ell_alpha_log"},
                                   {"value", diag.value},
                                   {"diverging", diag.diverging},
                                   {"truncation", p.config.a.truncation()}});
    if (diag.diverging) {
      out.warnings.push_back(
          "coefficients are not in l^alpha log l at alpha = " + format_double(p.config.alpha) +
          ": the limit Y(a) does not exist and X_n(a) is not expected to be tight");
    }
    out.plan = std::move(p);
  } else if (cfg.kind == "autocov-scaling") {
    AutocovScalingConfig c;
    c.alpha = read_alpha(r);
    c.n_grid = read_n_grid(r);
    c.replicates = r.count_or("replicates", 2, 2000);
    c.seed = seed;
    c.lags = r.count_or("lags", 1, 2);
    c.hill_fraction = r.number_or("hill_fraction", 0.05);
    if (!(c.hill_fraction > 0.0 && c.hill_fraction <= 0.1)) {
      throw ParameterDomainError("hill_fraction", "hill_fraction must lie in (0, 0.1]");
    }
    if (std::floor(c.hill_fraction * static_cast<double>(c.replicates)) < 1.0) {
      throw ParameterDomainError("replicates", "too few replicates for the Hill estimator");
    }
    out.plan = c;
  } else if (cfg.kind == "qform-tails") {
    QformPlan p;
    p.config.alpha = read_alpha(r);
    p.config.replicates = r.count_or("replicates", 2, 100000);
    p.config.seed = seed;
    p.config.cauchy_multipliers = r.boolean_or("cauchy_multipliers", false);
    p.config.envelope_factor = r.number_or("envelope_factor", 10.0);
    if (r.has("x_grid")) p.config.x_grid = r.numbers("x_grid");
    for (double x : p.config.x_grid) {
      if (!(x > 0.0)) throw ParameterDomainError("x_grid", "x_grid entries must be positive");
    }
    const std::size_t n = r.count("n", 2);
    const Json& specs = r.get("specs");
    if (!specs.is_array() || specs.empty()) throw ConfigError("specs", "expected a nonempty array");
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const Reader s(specs[i], "specs[" + std::to_string(i) + "]");
      const std::string label = s.string_or("label", "spec" + std::to_string(i));
      if (s.has("coefficients")) {
        p.specs.push_back(QuadraticFormSpec::toeplitz(n, read_coefficients(s, catalog, n - 1), label));
      } else if (s.has("pairs")) {
        std::vector<double> b(n * n, 0.0);
        for (const auto& e : s.get("pairs")) {
          if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
              !e[2].is_number()) {
            throw ConfigError(s.field("pairs"), "each pair is [s, t, value] with 1-based s, t");
          }
          const auto ps = e[0].get<long long>();
          const auto pt = e[1].get<long long>();
          if (ps < 1 || pt < 1 || ps > static_cast<long long>(n) || pt > static_cast<long long>(n) || ps == pt) {
            throw ParameterDomainError(s.field("pairs"), "pair indices must be distinct and lie in 1..n");
          }
          b[static_cast<std::size_t>(ps - 1) * n + static_cast<std::size_t>(pt - 1)] = e[2].get<double>();
        }
        p.specs.emplace_back(n, std::move(b), label);
      } else {
        throw ConfigError(s.field("coefficients"), "spec needs coefficients or pairs");
      }
      const double g = p.specs.back().gamma_n(p.config.alpha);
      out.diagnostics.push_back(Json{{"check", "gamma_n"}, {"spec", label}, {"value", g}});
      if (g == 0.0) out.warnings.push_back(label + ": all-zero form, tail bound is vacuous");
    }
    out.plan = std::move(p);
  } else if (cfg.kind == "remainder") {
    RemainderConfig c;
    c.alpha = read_alpha(r);
    c.filter = read_filter(r, "filter");
    c.cls = read_class(r, catalog);
    c.n_grid = read_n_grid(r);
    c.replicates = r.count_or("replicates", 2, 500);
    c.seed = seed;
    c.tau = r.number_or("tau", 0.1);
    c.bootstrap = r.count_or("bootstrap", 2, 200);
    c.keep_samples = r.boolean_or("dump_samples", false);
    if (!(c.tau > 0.0)) throw ParameterDomainError("tau", "tau must be > 0");
    const auto cond = filter_condition_check(c.filter, c.alpha, c.tau);
    out.diagnostics.push_back(Json{{"check", "filter_condition"},
                                   {"weighted_sum", cond.weighted_sum},
                                   {"log_exponent", cond.log_exponent},
                                   {"tail", to_string(cond.tail_verdict)},
                                   {"satisfied", cond.satisfied()}});
    if (!cond.satisfied()) out.warnings.push_back("filter fails the summability condition; the run proceeds anyway");
    double sup = 0.0;
    for (const auto& f : c.cls.members) sup = std::max(sup, l2_norm(f));
    out.diagnostics.push_back(Json{{"check", "class_l2"}, {"sup_norm", sup}, {"members", c.cls.members.size()}});
    out.plan = std::move(c);
  } else if (cfg.kind == "covering") {
    CoveringPlan p;
    p.cls = read_class(r, catalog);
    p.beta = r.number("beta");
    p.alpha = read_alpha(r);
    p.eps_grid = r.numbers("eps_grid");
    for (auto k : r.sizes("k_grid")) p.k_grid.push_back(static_cast<int>(std::min<std::size_t>(k, 1000)));
    if (r.has("slope_window")) {
      const auto w = r.numbers("slope_window");
      if (w.size() != 2 || !(w[0] <= w[1])) throw ParameterDomainError("slope_window", "expected [lo, hi] with lo <= hi");
      p.slope_window = std::pair{w[0], w[1]};
    }
    out.diagnostics.push_back(Json{{"check", "class"}, {"members", p.cls.members.size()}, {"discretization", p.cls.discretization}});
    out.plan = std::move(p);
  } else if (cfg.kind == "coeffs") {
    CoeffsPlan p{read_function(r.get("function"), catalog, "function")};
    p.K = r.count("K", 0);
    const std::string method = r.string_or("method", "auto");
    if (method == "quadrature") p.method = CoeffMethod::kQuadrature;
    else if (method != "auto") throw ConfigError("method", "method must be \"auto\" or \"quadrature\"");
    out.diagnostics.push_back(Json{{"check", "l2_norm"}, {"value", l2_norm(p.function)}});
    out.plan = std::move(p);
  } else if (cfg.kind == "simulate") {
    SimulatePlan p;
    p.n = r.count("n", 1);
    p.alpha = read_alpha(r);
    if (r.has("filter")) p.filter = read_filter(r, "filter");
    p.seed = seed;
    out.plan = std::move(p);
  }
  return out;
}

std::string samples_csv(const std::vector<std::pair<std::string, std::vector<double>>>& samples) {
  std::string out = "sample,index,value\r\n";
  for (const auto& [name, values] : samples) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out += name + "," + std::to_string(i) + "," + format_double(values[i]) + "\r\n";
    }
  }
  return out;
}

void add_report(std::vector<io::Artifact>& out, ExperimentReport report, const std::vector<std::string>& warnings,
                OutputFormat format) {
  for (const auto& w : warnings) {
    if (std::find(report.warnings.begin(), report.warnings.end(), w) == report.warnings.end()) {
      report.warnings.push_back(w);
    }
  }
  out.push_back({"report.json", io::dump(to_json(report))});
  if (format == OutputFormat::kCsv) out.push_back({"summary.csv", to_csv(report)});
  if (!report.samples.empty()) out.push_back({"samples.csv", samples_csv(report.samples)});
}

ExperimentReport covering_report(const CoveringPlan& p, std::uint64_t seed) {
  const auto fit = entropy_condition_fit(p.cls, p.beta, p.eps_grid, p.k_grid, p.alpha);
  ExperimentReport report;
  report.kind = "covering";
  Json& c = report.config;
  c["class"] = p.cls.discretization;
  c["members"] = fit.members;
  c["beta"] = p.beta;
  c["alpha"] = p.alpha;
  c["eps_grid"] = p.eps_grid;
  c["k_grid"] = p.k_grid;
  for (const auto& pt : fit.points) {
    report.add(fit.members,
               "covering[k=" + std::to_string(pt.k) + "][eps=" + format_double(pt.epsilon) + "]" +
                   (pt.used_in_fit ? "" : "[excluded]"),
               static_cast<double>(pt.covering), std::nullopt, 0, seed);
  }
  report.add(fit.members, "slope", fit.slope, std::nullopt, 0, seed);
  report.add(fit.members, "intercept", fit.intercept, std::nullopt, 0, seed);
  report.add(fit.members, "empirical_constant", fit.empirical_constant, std::nullopt, 0, seed);
  report.verdicts.push_back({"entropy_condition", fit.holds, "slope <= beta < alpha", p.beta, fit.slope});
  if (p.slope_window) {
    const auto [lo, hi] = *p.slope_window;
    report.verdicts.push_back(
        {"slope_window", fit.slope >= lo && fit.slope <= hi, "lo <= slope <= hi", hi - lo, fit.slope});
  }
  return report;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  try {
    cfg.raw = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", std::string("JSON parse error: ") + e.what());
  }
  const Reader r(cfg.raw, "");
  cfg.kind = r.string("experiment");
  if (!kKinds.count(cfg.kind)) throw ConfigError("experiment", "unknown experiment kind '" + cfg.kind + "'");
  cfg.seed = r.seed("seed", 1);
  if (r.has("output_dir")) cfg.output_dir = base_dir / r.string("output_dir");
  cfg.base_dir = base_dir;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("config", "config file not found: " + path.string());
  return parse_config(io::read_file(path), path.parent_path());
}

void apply_seed_override(ExperimentConfig& config, std::uint64_t seed) {
  config.seed = seed;
  config.raw["seed"] = seed;
}

Json validate_config(const ExperimentConfig& config) {
  const auto built = build(config);
  Json j;
  j["status"] = "ok";
  j["experiment"] = config.kind;
  j["seed"] = config.seed;
  j["diagnostics"] = built.diagnostics;
  j["warnings"] = built.warnings;
  return j;
}

std::vector<io::Artifact> run_config(const ExperimentConfig& config, OutputFormat format) {
  auto built = build(config);
  std::vector<io::Artifact> out;
  const std::uint64_t seed = config.seed;

  std::visit(
      [&](auto& plan) {
        using T = std::decay_t<decltype(plan)>;
        if constexpr (std::is_same_v<T, FidiPlan>) {
          if (plan.scales.calibrate) {
            plan.config.scales = calibrate_scales(plan.config.alpha, RngStream{seed, kCalibrationStream},
                                                  plan.scales.options);
          }
          add_report(out, fidi_experiment(plan.config), built.warnings, format);
        } else if constexpr (std::is_same_v<T, AutocovScalingConfig>) {
          add_report(out, autocov_scaling_experiment(plan), built.warnings, format);
        } else if constexpr (std::is_same_v<T, QformPlan>) {
          add_report(out, quadratic_form_tail_check(plan.specs, plan.config), built.warnings, format);
        } else if constexpr (std::is_same_v<T, RemainderConfig>) {
          add_report(out, remainder_negligibility_experiment(plan), built.warnings, format);
        } else if constexpr (std::is_same_v<T, CoveringPlan>) {
          add_report(out, covering_report(plan, seed), built.warnings, format);
        } else if constexpr (std::is_same_v<T, CoeffsPlan>) {
          const auto a = fourier_coeffs(plan.function, plan.K, plan.method);
          if (format == OutputFormat::kCsv) {
            out.push_back({"coeffs.csv", io::coeffs_csv(a)});
          } else {
            out.push_back({"coeffs.json", io::dump(Json{{"function", plan.function.describe()},
                                                       {"K", plan.K},
                                                       {"method", a.analytic_tag.empty() ? "quadrature" : a.analytic_tag},
                                                       {"a", a.a}})});
          }
        } else if constexpr (std::is_same_v<T, SimulatePlan>) {
          const RngStream stream{plan.seed, 0};
          const SamplePath path = plan.filter ? simulate_linear(plan.n, *plan.filter, plan.alpha, stream).process
                                              : simulate_iid(plan.n, plan.alpha, stream);
          if (format == OutputFormat::kCsv) {
            out.push_back({"path.csv", io::path_csv(path)});
            out.push_back({"path.sidecar.json", io::dump(io::path_sidecar(path))});
          } else {
            Json j = io::path_sidecar(path);
            j["values"] = path.values;
            out.push_back({"path.json", io::dump(j)});
          }
        }
      },
      built.plan);

  const Json seeds{{"master", seed}};
  out.push_back({"manifest.json", io::dump(io::manifest(config.raw, seeds, out))});
  return out;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::kConfig:
        return 2;
      case ErrorKind::kPrecondition:
        return 3;
      case ErrorKind::kNumerical:
        return 4;
    }
  }
  return 1;
}

Json error_record(const std::exception& e) {
  Json j;
  j["status"] = "error";
  j["exit_code"] = exit_code_for(e);
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    static const char* kKindNames[] = {"config", "precondition", "numerical"};
    j["kind"] = kKindNames[static_cast<int>(err->kind())];
    j["code"] = err->code();
    j["field"] = err->field();
  } else {
    j["kind"] = "internal";
    j["code"] = "internal";
    j["field"] = "";
  }
  j["message"] = e.what();
  return j;
}

}  // namespace stablespec
