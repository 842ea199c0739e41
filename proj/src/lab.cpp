#include "stablespec/lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "stablespec/error.hpp"
#include "stablespec/kernels.hpp"
#include "stablespec/spectral.hpp"
#include "stablespec/stable.hpp"
#include "stablespec/statistics.hpp"
#include "stablespec/summability.hpp"

namespace stablespec {

namespace {

constexpr std::uint64_t kPathStream = 1;
constexpr std::uint64_t kLimitStream = 2;
constexpr std::uint64_t kBootstrapStream = 3;
constexpr std::uint64_t kQformStream = 4;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ParameterDomainError("alpha", "alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
}

void check_n_grid(const std::vector<std::size_t>& grid) {
  if (grid.empty()) throw ParameterDomainError("n_grid", "n_grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 2) throw ParameterDomainError("n_grid", "every n must be at least 2");
    if (i > 0 && grid[i] <= grid[i - 1]) throw ParameterDomainError("n_grid", "n_grid must be strictly increasing");
  }
}

void check_replicates(std::size_t r) {
  if (r < 2) throw ParameterDomainError("replicates", "need at least two replicates");
}

bool all_zero(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

double ks_standardized(std::span<const double> a, std::span<const double> b) {
  const auto sa = standardize(a);
  const auto sb = standardize(b);
  return ks_distance(sa, sb);
}

Json coeffs_echo(const FourierCoeffs& a) {
  Json j;
  j["tag"] = a.analytic_tag;
  j["truncation"] = a.truncation();
  return j;
}

Json grid_echo(const std::vector<std::size_t>& grid) {
  Json j = Json::array();
  for (auto n : grid) j.push_back(n);
  return j;
}

// Largest excess of values[i+1] over values[i] + 2 max(se_i, se_{i+1}); <= 0 when the trend holds.
double max_band_excess(std::span<const double> v, std::span<const double> se, bool increasing_allowed) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double band = 2.0 * std::max(se[i], se[i + 1]);
    const double excess = increasing_allowed ? (v[i] - band) - v[i + 1] : v[i + 1] - (v[i] + band);
    worst = std::max(worst, excess);
  }
  return v.size() < 2 ? 0.0 : worst;
}

ReportVerdict trend_verdict(const ExperimentReport& report, const std::string& statistic, bool nonincreasing) {
  const auto v = report.series(statistic);
  const auto se = report.se_series(statistic);
  ReportVerdict out;
  out.name = statistic + (nonincreasing ? "_nonincreasing" : "_nonshrinking");
  out.rule = nonincreasing ? "v[i+1] <= v[i] + 2 max(se[i], se[i+1])" : "v[i+1] >= v[i] - 2 max(se[i], se[i+1])";
  out.tolerance = 0.0;
  out.pass = nonincreasing ? nonincreasing_within_band(v, se).holds : nondecreasing_within_band(v, se).holds;
  out.observed = max_band_excess(v, se, !nonincreasing);
  return out;
}

double hill_or_zero(std::span<const double> x, double fraction) {
  if (all_zero(x)) return 0.0;
  return hill_tail_index(x, fraction);
}

}  // namespace

std::vector<std::size_t> default_n_grid() {
  std::vector<std::size_t> out;
  for (std::size_t n = 256; n <= 16384; n *= 2) out.push_back(n);
  return out;
}

NormalizedStatistic normalized_statistic_Xn(const FourierCoeffs& a, const SamplePath& eps, double alpha) {
  check_alpha(alpha);
  eps.validate();
  const std::size_t n = eps.size();
  if (n < 2) throw ParameterDomainError("n", "normalized statistic needs n >= 2");
  const std::size_t lags = std::min(n - 1, a.truncation());
  const double dn = static_cast<double>(n);
  const double logn = std::log(dn);
  NormalizedStatistic out;
  if (lags == 0) return out;
  const auto gamma = autocov_lags(eps.values, lags);
  double s = 0.0;
  for (std::size_t k = 1; k <= lags; ++k) s += a.a[k] * gamma[k];
  out.x = std::pow(dn * logn, -1.0 / alpha) * dn * s;
  if (!(gamma[0] > 0.0)) throw DegenerateError("path", "self-normalized statistic of an all-zero path");
  out.x_tilde = std::pow(dn / logn, 1.0 / alpha) * (s / gamma[0]);
  return out;
}

QuadraticFormSpec::QuadraticFormSpec(std::size_t n, std::vector<double> b, std::string label)
    : n_(n), b_(std::move(b)), label_(std::move(label)) {
  if (n_ < 2) throw ParameterDomainError("n", "quadratic form needs n >= 2");
  if (b_.size() != n_ * n_) throw ParameterDomainError("b", "coefficient table must be n x n");
  for (std::size_t s = 0; s < n_; ++s) {
    if (b_[s * n_ + s] != 0.0) throw ParameterDomainError("b", "diagonal entries must be zero");
  }
  for (double v : b_) {
    if (!std::isfinite(v)) throw ParameterDomainError("b", "coefficients must be finite");
  }
}

QuadraticFormSpec QuadraticFormSpec::toeplitz(std::size_t n, const FourierCoeffs& a, std::string label) {
  std::vector<double> b(n * n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s != t) b[s * n + t] = a[s > t ? s - t : t - s];
    }
  }
  return QuadraticFormSpec(n, std::move(b), std::move(label));
}

bool QuadraticFormSpec::is_zero() const { return all_zero(b_); }

double QuadraticFormSpec::evaluate(std::span<const double> eps) const {
  if (eps.size() != n_) throw ParameterDomainError("eps", "innovation count does not match the form size");
  double q = 0.0;
  for (std::size_t s = 0; s < n_; ++s) {
    double row = 0.0;
    for (std::size_t t = 0; t < n_; ++t) row += b_[s * n_ + t] * eps[t];
    q += eps[s] * row;
  }
  return q;
}

double QuadraticFormSpec::gamma_n(double alpha) const {
  double g = 0.0;
  for (double v : b_) {
    if (v == 0.0) continue;
    const double m = std::abs(v);
    g += std::pow(m, alpha) * (1.0 + std::max(0.0, std::log(1.0 / m)));
  }
  return g;
}

double implied_constant_ratio(double p, double x, double alpha, double gamma) {
  if (!(gamma > 0.0)) throw DegenerateError("b", "Gamma_n(b) = 0: the tail bound is vacuous");
  return p * std::pow(x, alpha) / ((1.0 + std::max(0.0, std::log(x))) * gamma);
}

ExperimentReport fidi_experiment(const FidiConfig& config) {
  check_alpha(config.alpha);
  check_n_grid(config.n_grid);
  check_replicates(config.replicates);
  const double alpha = config.alpha;
  const std::size_t reps = config.replicates;
  const std::uint64_t seed = config.seed;

  ExperimentReport report;
  report.kind = "fidi";
  const auto diag = ell_alpha_log_norm(config.a.a, alpha);
  const bool expect_tight = !diag.diverging;
  {
    Json& c = report.config;
    c["alpha"] = alpha;
    c["coefficients"] = coeffs_echo(config.a);
    c["n_grid"] = grid_echo(config.n_grid);
    c["replicates"] = reps;
    c["seed"] = seed;
    c["scales"] = Json{{"mode", to_string(config.scales.provenance)},
                       {"sigma1", config.scales.sigma1},
                       {"sigma2", config.scales.sigma2}};
    c["limit_draws"] = config.limit_draws == 0 ? reps : config.limit_draws;
    c["hill_fraction"] = config.hill_fraction;
    c["bootstrap"] = config.bootstrap;
    c["ell_alpha_log_sum"] = diag.value;
    c["expect_tight"] = expect_tight;
  }
  if (!expect_tight) {
    report.warnings.push_back(
        "coefficients fail the l^alpha log l diagnostic: X_n(a) is not expected to be tight and the "
        "limit draws are truncated at K = " + std::to_string(config.a.truncation()));
  }

  const std::size_t draws = config.limit_draws == 0 ? reps : config.limit_draws;
  const RngStream limit_stream{seed, kLimitStream};
  const auto y = sample_Y_of_a(config.a, alpha, config.scales, config.a.truncation(), limit_stream, draws);
  const auto y_tilde =
      sample_Y_tilde_of_a(config.a, alpha, config.scales, config.a.truncation(), limit_stream, draws);

  const RngStream paths{seed, kPathStream};
  const RngStream boot{seed, kBootstrapStream};
  const bool hill_possible = std::floor(config.hill_fraction * static_cast<double>(reps)) >= 1.0;
  if (!hill_possible) report.warnings.push_back("too few replicates for the Hill estimator; hill rows omitted");

  for (std::size_t n : config.n_grid) {
    std::vector<double> x(reps);
    std::vector<double> xt(reps);
    kernels::for_each_replicate(reps, [&](std::size_t r) {
      const auto path = simulate_iid(n, alpha, paths.child(n).child(r));
      const auto s = normalized_statistic_Xn(config.a, path, alpha);
      x[r] = s.x;
      xt[r] = s.x_tilde;
    });
    if (config.keep_samples) {
      report.samples.emplace_back("x[n=" + std::to_string(n) + "]", x);
      report.samples.emplace_back("x_tilde[n=" + std::to_string(n) + "]", xt);
    }
    const auto bs = boot.child(n);
    const std::function<double(std::span<const double>, std::span<const double>)> ks = ks_standardized;
    report.add(n, "ks_x", ks_standardized(x, y.values),
               bootstrap_se_two_sample(x, y.values, ks, config.bootstrap, bs.child(0)), reps, seed);
    report.add(n, "ks_x_tilde", ks_standardized(xt, y_tilde.values),
               bootstrap_se_two_sample(xt, y_tilde.values, ks, config.bootstrap, bs.child(1)), reps, seed);
    if (config.scales.provenance == LimitScales::Provenance::kCalibrated) {
      report.add(n, "ks_x_absolute", ks_distance(x, y.values), std::nullopt, reps, seed);
    }
    const std::function<double(std::span<const double>)> iqr_fn = [](std::span<const double> s) { return iqr(s); };
    report.add(n, "iqr_x", iqr(x), bootstrap_se(x, iqr_fn, config.bootstrap, bs.child(2)), reps, seed);
    report.add(n, "iqr_x_tilde", iqr(xt), bootstrap_se(xt, iqr_fn, config.bootstrap, bs.child(3)), reps, seed);
    if (hill_possible) {
      const double frac = config.hill_fraction;
      const std::function<double(std::span<const double>)> hill_fn = [frac](std::span<const double> s) {
        return hill_or_zero(s, frac);
      };
      report.add(n, "hill_x", hill_or_zero(x, frac), bootstrap_se(x, hill_fn, config.bootstrap, bs.child(4)), reps,
                 seed);
    }
  }

  if (config.keep_samples) {
    report.samples.emplace_back("y", y.values);
    report.samples.emplace_back("y_tilde", y_tilde.values);
  }
  const auto iqr_series = report.series("iqr_x");
  if (iqr_series.front() > 0.0) {
    report.add(config.n_grid.back(), "iqr_x_growth", iqr_series.back() / iqr_series.front(), std::nullopt, reps, seed);
  }
  report.verdicts.push_back(trend_verdict(report, "ks_x_tilde", true));
  report.verdicts.push_back(trend_verdict(report, "ks_x", true));
  if (!expect_tight) report.verdicts.push_back(trend_verdict(report, "iqr_x", false));
  return report;
}

ExperimentReport autocov_scaling_experiment(const AutocovScalingConfig& config) {
  check_alpha(config.alpha);
  check_n_grid(config.n_grid);
  check_replicates(config.replicates);
  if (config.lags < 1) throw ParameterDomainError("lags", "need at least one lag statistic");
  const double alpha = config.alpha;
  const std::size_t reps = config.replicates;
  const std::size_t m = config.lags;
  const std::uint64_t seed = config.seed;

  ExperimentReport report;
  report.kind = "autocov-scaling";
  {
    Json& c = report.config;
    c["alpha"] = alpha;
    c["n_grid"] = grid_echo(config.n_grid);
    c["replicates"] = reps;
    c["seed"] = seed;
    c["lags"] = m;
    c["hill_fraction"] = config.hill_fraction;
  }
  const RngStream paths{seed, kPathStream};
  const double bound = 3.0 / std::sqrt(static_cast<double>(reps));

  for (std::size_t n : config.n_grid) {
    const double dn = static_cast<double>(n);
    const double s0 = std::pow(dn, 2.0 / alpha);
    const double sh = std::pow(dn * std::log(dn), 1.0 / alpha);
    std::vector<std::vector<double>> stats(m + 1, std::vector<double>(reps));
    kernels::for_each_replicate(reps, [&](std::size_t r) {
      const auto path = simulate_iid(n, alpha, paths.child(n).child(r));
      const auto g = autocov_lags(path.values, std::min(m, n - 1));
      for (std::size_t h = 0; h <= m; ++h) {
        const double gh = h < g.size() ? g[h] : 0.0;
        stats[h][r] = dn * gh / (h == 0 ? s0 : sh);
      }
    });
    const auto positive = static_cast<double>(
        std::count_if(stats[0].begin(), stats[0].end(), [](double v) { return v > 0.0; }));
    const double pos_frac = positive / static_cast<double>(reps);
    report.add(n, "gamma0_positive_fraction", pos_frac, std::nullopt, reps, seed);
    report.add(n, "median_gamma0", median(stats[0]), std::nullopt, reps, seed);
    const double hill0 = hill_tail_index(stats[0], config.hill_fraction);
    report.add(n, "hill_gamma0", hill0, std::nullopt, reps, seed);
    for (std::size_t h = 1; h <= m; ++h) {
      report.add(n, "hill_lag" + std::to_string(h), hill_tail_index(stats[h], config.hill_fraction), std::nullopt, reps,
                 seed);
    }
    const std::string at = "[n=" + std::to_string(n) + "]";
    report.verdicts.push_back({"gamma0_positive" + at, pos_frac == 1.0, "fraction == 1", 0.0, pos_frac});
    report.verdicts.push_back({"hill_gamma0" + at, std::abs(hill0 - alpha / 2.0) <= config.hill_tolerance_zero,
                               "|hill - alpha/2| <= tolerance", config.hill_tolerance_zero, hill0});
    const double hill1 = report.row("hill_lag1", n).value;
    report.verdicts.push_back({"hill_lag1" + at, std::abs(hill1 - alpha) <= config.hill_tolerance_lag,
                               "|hill - alpha| <= tolerance", config.hill_tolerance_lag, hill1});
    if (m >= 2) {
      const double corr = sign_correlation(stats[1], stats[2]);
      report.add(n, "sign_corr_lag1_lag2", corr, std::nullopt, reps, seed);
      report.verdicts.push_back(
          {"sign_corr_lag1_lag2" + at, std::abs(corr) <= bound, "|corr| <= 3 / sqrt(replicates)", bound, corr});
    }
  }
  return report;
}

QformTailResult quadratic_form_tail(const QuadraticFormSpec& spec, const QformTailConfig& config,
                                    const RngStream& stream) {
  check_alpha(config.alpha);
  check_replicates(config.replicates);
  for (double x : config.x_grid) {
    if (!(x > 0.0)) throw ParameterDomainError("x_grid", "x_grid entries must be positive");
  }
  const std::size_t n = spec.n();
  const std::size_t reps = config.replicates;
  QformTailResult out;
  out.gamma = spec.gamma_n(config.alpha);
  out.exceedance.assign(config.x_grid.size(), 0.0);
  if (spec.is_zero()) return out;

  std::vector<double> q(reps);
  const StableLaw law = StableLaw::symmetric(config.alpha);
  const StableLaw cauchy = StableLaw::symmetric(1.0);
  kernels::for_each_replicate(reps, [&](std::size_t r) {
    auto engine = stream.child(r).engine();
    std::vector<double> eps(n);
    for (auto& e : eps) e = draw_stable(law, engine);
    if (!config.cauchy_multipliers) {
      q[r] = spec.evaluate(eps);
      return;
    }
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        if (s == t) continue;
        const double c = draw_stable(cauchy, engine);
        acc += spec.b(s, t) * c * eps[s] * eps[t];
      }
    }
    q[r] = acc;
  });
  for (std::size_t i = 0; i < config.x_grid.size(); ++i) {
    const double x = config.x_grid[i];
    const auto hits = std::count_if(q.begin(), q.end(), [x](double v) { return v > x; });
    out.exceedance[i] = static_cast<double>(hits) / static_cast<double>(reps);
  }
  for (std::size_t i = 0; i < config.x_grid.size(); ++i) {
    out.ratio.push_back(implied_constant_ratio(out.exceedance[i], config.x_grid[i], config.alpha, out.gamma));
  }
  out.envelope = *std::max_element(out.ratio.begin(), out.ratio.end());
  return out;
}

ExperimentReport quadratic_form_tail_check(std::span<const QuadraticFormSpec> specs, const QformTailConfig& config) {
  if (specs.empty()) throw ParameterDomainError("specs", "need at least one quadratic form");
  ExperimentReport report;
  report.kind = "qform-tails";
  {
    Json& c = report.config;
    c["alpha"] = config.alpha;
    c["x_grid"] = config.x_grid;
    c["replicates"] = config.replicates;
    c["seed"] = config.seed;
    c["cauchy_multipliers"] = config.cauchy_multipliers;
    Json labels = Json::array();
    for (const auto& s : specs) labels.push_back(Json{{"label", s.label()}, {"n", s.n()}});
    c["specs"] = std::move(labels);
  }
  const RngStream base{config.seed, kQformStream};
  std::vector<double> envelopes;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    const auto res = quadratic_form_tail(spec, config, base.child(i));
    const std::string prefix = spec.label() + ":";
    report.add(spec.n(), prefix + "gamma_n", res.gamma, std::nullopt, config.replicates, config.seed);
    for (std::size_t j = 0; j < config.x_grid.size(); ++j) {
      const std::string x = "[x=" + format_double(config.x_grid[j]) + "]";
      const double p = res.exceedance[j];
      const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(config.replicates));
      report.add(spec.n(), prefix + "exceedance" + x, p, se, config.replicates, config.seed);
      if (!res.ratio.empty()) {
        report.add(spec.n(), prefix + "ratio" + x, res.ratio[j], std::nullopt, config.replicates, config.seed);
      }
    }
    if (res.ratio.empty()) {
      report.warnings.push_back(spec.label() + ": Gamma_n(b) = 0, the tail bound is vacuous");
      continue;
    }
    report.add(spec.n(), prefix + "envelope", res.envelope, std::nullopt, config.replicates, config.seed);
    envelopes.push_back(res.envelope);
  }
  ReportVerdict v{"envelope_spread", true, "max envelope / min envelope < factor", config.envelope_factor, 1.0};
  if (envelopes.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(envelopes.begin(), envelopes.end());
    v.observed = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
    v.pass = v.observed < config.envelope_factor;
  } else {
    report.warnings.push_back("fewer than two nonzero specs: envelope comparison is vacuous");
  }
  report.verdicts.push_back(v);
  return report;
}

ExperimentReport remainder_negligibility_experiment(const RemainderConfig& config) {
  check_alpha(config.alpha);
  check_n_grid(config.n_grid);
  check_replicates(config.replicates);
  if (config.cls.members.empty()) throw ParameterDomainError("class", "function class is empty");
  const double alpha = config.alpha;
  const std::size_t reps = config.replicates;
  const std::uint64_t seed = config.seed;

  ExperimentReport report;
  report.kind = "remainder";
  const auto cond = filter_condition_check(config.filter, alpha, config.tau);
  Json members = Json::array();
  double sup_l2 = 0.0;
  for (const auto& f : config.cls.members) {
    members.push_back(f.describe());
    const double l2 = l2_norm(f);
    if (!std::isfinite(l2)) throw ParameterDomainError("class", "member " + f.describe() + " has infinite L2 norm");
    sup_l2 = std::max(sup_l2, l2);
  }
  {
    Json& c = report.config;
    c["alpha"] = alpha;
    c["filter"] = config.filter.describe();
    c["class"] = Json{{"discretization", config.cls.discretization}, {"members", std::move(members)}};
    c["n_grid"] = grid_echo(config.n_grid);
    c["replicates"] = reps;
    c["seed"] = seed;
    c["tau"] = config.tau;
    c["filter_condition"] = Json{{"weighted_sum", cond.weighted_sum},
                                 {"log_exponent", cond.log_exponent},
                                 {"tail", to_string(cond.tail_verdict)}};
    c["sup_l2_norm"] = sup_l2;
  }
  if (!cond.satisfied()) {
    report.warnings.push_back("filter fails the summability condition; running anyway");
  }

  const int span = config.filter.max_lag() - config.filter.min_lag();
  const RngStream paths{seed, kPathStream};
  const RngStream boot{seed, kBootstrapStream};
  const std::function<double(std::span<const double>)> med = [](std::span<const double> s) { return median(s); };
  const std::function<double(std::span<const double>)> q90 = [](std::span<const double> s) {
    return quantile(s, 0.9);
  };
  for (std::size_t n : config.n_grid) {
    const double dn = static_cast<double>(n);
    const double scale = dn / std::pow(dn * std::log(dn), 1.0 / alpha);
    const auto table = coefficient_table(config.cls, n - 1 + static_cast<std::size_t>(span));
    std::vector<double> stat(reps);
    kernels::for_each_replicate(reps, [&](std::size_t r) {
      const auto sim = simulate_linear(n, config.filter, alpha, paths.child(n).child(r));
      const auto ir = integrated_remainder(sim.process, sim.innovations, config.filter, table);
      double sup = 0.0;
      for (double v : ir) sup = std::max(sup, std::abs(v));
      stat[r] = scale * sup;
    });
    if (config.keep_samples) report.samples.emplace_back("sup_remainder[n=" + std::to_string(n) + "]", stat);
    const auto bs = boot.child(n);
    report.add(n, "median", median(stat), bootstrap_se(stat, med, config.bootstrap, bs.child(0)), reps, seed);
    report.add(n, "q90", quantile(stat, 0.9), bootstrap_se(stat, q90, config.bootstrap, bs.child(1)), reps, seed);
  }
  const auto medians = report.series("median");
  if (medians.back() > 0.0) {
    report.add(config.n_grid.back(), "median_decrease_factor", medians.front() / medians.back(), std::nullopt, reps,
               seed);
  }
  report.verdicts.push_back(trend_verdict(report, "median", true));
  report.verdicts.push_back(trend_verdict(report, "q90", true));
  return report;
}

}  // namespace stablespec
