// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stablespec/catalog.hpp"
#include "stablespec/covering.hpp"
#include "stablespec/fourier.hpp"
#include "stablespec/io.hpp"
#include "stablespec/kernels.hpp"
#include "stablespec/lab.hpp"
#include "stablespec/quadrature.hpp"
#include "stablespec/runner.hpp"
#include "stablespec/spectral.hpp"
#include "stablespec/stable.hpp"
#include "stablespec/statistics.hpp"

using namespace stablespec;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = STABLESPEC_CONFIG_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) { return format_double(v); }

std::vector<std::size_t> dyadic(int lo, int hi, int step = 1) {
  std::vector<std::size_t> out;
  for (int e = lo; e <= hi; e += step) out.push_back(std::size_t{1} << e);
  return out;
}

Outcome periodogram_decomposition() {
  Xoshiro256pp eng(2024);
  const auto grid = frequency_grid(64);
  double worst = 0.0;
  bool ok = true;
  for (int p = 0; p < 100; ++p) {
    const std::size_t n = 1 + static_cast<std::size_t>(eng.next() % 256);
    const double alpha = 0.5 + 1.4 * eng.uniform_open();
    const auto path = simulate_iid(n, alpha, {2024, static_cast<std::uint64_t>(p)});
    for (double l : grid) {
      const double direct = periodogram(path, l);
      const double err = std::abs(direct - periodogram_via_autocov(path, l)) / (1.0 + direct);
      worst = std::max(worst, err);
      ok = ok && err <= 1e-9 && direct >= 0.0;
    }
  }
  return {ok, "max |I - I_acf| / (1 + I) = " + fmt(worst) + " (tol 1e-9), 100 paths x 64 frequencies"};
}

Outcome coefficient_vs_quadrature() {
  const auto catalog = Catalog::load(kConfigs / "catalog.txt");
  double worst = 0.0;
  std::string worst_at;
  for (std::size_t n : {16u, 64u, 256u}) {
    const SamplePath iid = simulate_iid(n, 1.5, {77, n});
    const SamplePath lin = simulate_linear(n, LinearFilter::ma1(0.5), 0.9, {78, n}).process;
    for (const SamplePath* path : {&iid, &lin}) {
      const double g0 = sample_autocov(*path, 0);
      for (const auto& name : catalog.names()) {
        const auto& f = catalog.at(name);
        const double coeff_form = integrated_periodogram(*path, fourier_coeffs(f, n - 1));
        const auto bps = f.breakpoints();
        const double scale = g0 * std::numbers::pi * (1.0 + std::abs(f(0.0)));
        const double quad = integrate([&](double l) { return periodogram(*path, l) * f(l); }, 0.0, std::numbers::pi,
                                      1e-11 * scale, bps, static_cast<int>(n / 16 + 1))
                                .value;
        const double err = std::abs(coeff_form - quad) / std::abs(quad);
        if (err > worst) {
          worst = err;
          worst_at = name + " n=" + std::to_string(n);
        }
      }
    }
  }
  return {worst <= 1e-6, "max relative gap = " + fmt(worst) + " at " + worst_at + " (tol 1e-6), " +
                             std::to_string(catalog.names().size()) + " catalog functions"};
}

Outcome indicator_coefficients() {
  double worst = 0.0;
  for (double x : {0.5, 1.0, std::numbers::pi}) {
    const auto a = fourier_coeffs(FunctionSpec::indicator(x), 1000);
    worst = std::max(worst, std::abs(a[0] - x));
    for (std::size_t k = 1; k <= 1000; ++k) worst = std::max(worst, std::abs(a[k] - std::sin(x * k) / k));
  }
  return {worst <= 1e-12, "max |a_k - sin(xk)/k| = " + fmt(worst) + " (tol 1e-12), k <= 1000"};
}

Outcome sas_characteristic_function() {
  const std::size_t n = 1000000;
  const double tol = 5.0 / std::sqrt(static_cast<double>(n));
  double worst = 0.0;
  for (double alpha : {0.6, 1.0, 1.5, 1.9}) {
    const auto x = sample_sas(StableLaw::symmetric(alpha), {4, static_cast<std::uint64_t>(alpha * 10)}, n);
    for (double t : {0.25, 0.5, 1.0, 2.0}) {
      worst = std::max(worst, std::abs(empirical_charfn(x, t) - std::complex<double>(sas_charfn(alpha, 1.0, t), 0.0)));
    }
  }
  return {worst <= tol, "max |phi_hat - exp(-|t|^alpha)| = " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

Outcome autocovariance_scaling() {
  AutocovScalingConfig cfg;
  cfg.alpha = 1.5;
  cfg.n_grid = {16384};
  cfg.replicates = 2000;
  cfg.seed = 1;
  cfg.hill_fraction = 0.05;
  const auto r = autocov_scaling_experiment(cfg);
  const double h0 = r.row("hill_gamma0", 16384).value;
  const double h1 = r.row("hill_lag1", 16384).value;
  const double pos = r.row("gamma0_positive_fraction", 16384).value;
  const bool ok = h0 >= 0.6 && h0 <= 0.9 && h1 >= 1.3 && h1 <= 1.7 && pos == 1.0;
  return {ok, "Hill(gamma0) = " + fmt(h0) + " in [0.6, 0.9], Hill(lag1) = " + fmt(h1) +
                  " in [1.3, 1.7], positive fraction = " + fmt(pos)};
}

FidiConfig fidi_config(double alpha, FourierCoeffs a) {
  FidiConfig cfg;
  cfg.alpha = alpha;
  cfg.a = std::move(a);
  cfg.n_grid = dyadic(8, 14, 2);
  cfg.replicates = 1000;
  cfg.seed = 1;
  return cfg;
}

std::string series_text(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(std::round(v[i] * 1e4) / 1e4);
  return s + "]";
}

struct FidiRuns {
  ExperimentReport geometric_07;
  ExperimentReport geometric_15;
};

const FidiRuns& geometric_fidi_runs() {
  static const FidiRuns runs{fidi_experiment(fidi_config(0.7, FourierCoeffs::geometric(0.5, 60))),
                             fidi_experiment(fidi_config(1.5, FourierCoeffs::geometric(0.5, 60)))};
  return runs;
}

Outcome fidi_trend() {
  const auto& runs = geometric_fidi_runs();
  bool ok = true;
  std::string detail;
  for (const auto* r : {&runs.geometric_07, &runs.geometric_15}) {
    const auto* v = r->verdict("ks_x_tilde_nonincreasing");
    ok = ok && v != nullptr && v->pass;
    detail += "alpha=" + fmt(r->config["alpha"].get<double>()) + " KS " + series_text(r->series("ks_x_tilde")) + " ";
  }
  return {ok, detail + "(nonincreasing within 2 x bootstrap SE)"};
}

Outcome indicator_non_tightness() {
  const auto& runs = geometric_fidi_runs();
  const auto ind = fidi_experiment(fidi_config(0.8, fourier_coeffs(FunctionSpec::indicator(1.0), 16383)));
  const auto* nonshrink = ind.verdict("iqr_x_nonshrinking");
  const double growth_ind = ind.row("iqr_x_growth", 16384).value;
  const double growth_g07 = runs.geometric_07.row("iqr_x_growth", 16384).value;
  const double growth_g15 = runs.geometric_15.row("iqr_x_growth", 16384).value;
  const bool geometric_converges = runs.geometric_07.verdict("ks_x_tilde_nonincreasing")->pass &&
                                   runs.geometric_15.verdict("ks_x_tilde_nonincreasing")->pass;
  const bool ok = nonshrink != nullptr && nonshrink->pass && geometric_converges && growth_ind > growth_g07 &&
                  growth_ind > growth_g15;
  return {ok, "indicator IQR(X_n) " + series_text(ind.series("iqr_x")) + " growth " + fmt(growth_ind) +
                  " vs geometric growth " + fmt(growth_g07) + " (alpha 0.7), " + fmt(growth_g15) + " (alpha 1.5)"};
}

Outcome tail_bound_envelopes() {
  const std::size_t n = 64;
  const std::vector<QuadraticFormSpec> specs{
      QuadraticFormSpec::toeplitz(n, FourierCoeffs::geometric(0.5, n - 1), "geometric"),
      QuadraticFormSpec::toeplitz(n, FourierCoeffs::power(3.0, n - 1), "cubic"),
      QuadraticFormSpec::toeplitz(n, FourierCoeffs::unit(1, n - 1), "lag1")};
  QformTailConfig cfg;
  cfg.alpha = 0.7;
  cfg.replicates = 100000;
  cfg.seed = 1;
  const auto r = quadratic_form_tail_check(specs, cfg);
  const auto* v = r.verdict("envelope_spread");
  std::string env;
  for (const auto& s : specs) env += s.label() + "=" + fmt(r.row(s.label() + ":envelope", n).value) + " ";
  return {v != nullptr && v->pass && v->observed < 10.0,
          "envelopes " + env + "spread " + fmt(v ? v->observed : NAN) + " (< 10)"};
}

Outcome remainder_negligibility() {
  RemainderConfig cfg;
  cfg.alpha = 1.5;
  cfg.filter = LinearFilter::ma1(0.5);
  cfg.cls.members = {FunctionSpec::constant(1.0), FunctionSpec::indicator(1.0), FunctionSpec::indicator(2.0)};
  cfg.n_grid = dyadic(8, 13);
  cfg.replicates = 500;
  cfg.seed = 1;
  const auto r = remainder_negligibility_experiment(cfg);
  const auto med = r.series("median");
  const double factor = med.front() / med.back();

  RemainderConfig id = cfg;
  id.filter = LinearFilter::identity();
  id.replicates = 50;
  const auto z = remainder_negligibility_experiment(id);
  bool zero = true;
  for (const auto& row : z.rows) {
    if (row.statistic == "median" || row.statistic == "q90") zero = zero && row.value == 0.0;
  }
  return {factor >= 2.0 && zero, "median " + series_text(med) + ", decrease factor " + fmt(factor) +
                                     " (>= 2); identity filter identically 0: " + (zero ? "yes" : "no")};
}

Outcome entropy_fits() {
  const std::vector<double> eps{0.025, 0.05, 0.1, 0.2, 0.4, 0.8};
  const std::vector<int> ks{2, 3, 4, 5, 6};
  const auto ind = entropy_condition_fit(FunctionClass::indicator_family(1000), 1.0, eps, ks, 1.5);
  const auto hol =
      entropy_condition_fit(FunctionClass::holder_cantor_family(1.0 / 512.0, 10, 0.25, 0.3, 2.8), 0.5, eps, ks, 1.5);
  const bool ok = ind.slope >= 0.8 && ind.slope <= 1.2 && hol.slope >= 0.35 && hol.slope <= 0.65;
  return {ok, "indicator slope " + fmt(ind.slope) + " in [0.8, 1.2] (" + std::to_string(ind.members) +
                  " members), Hoelder slope " + fmt(hol.slope) + " in [0.35, 0.65] (" + std::to_string(hol.members) +
                  " members, a/b = 0.5)"};
}

Outcome brute_force_equivalence() {
  Xoshiro256pp eng(11);
  double worst = 0.0;
  for (int p = 0; p < 50; ++p) {
    const double alpha = 0.5 + 1.4 * eng.uniform_open();
    const auto eps = simulate_iid(64, alpha, {11, static_cast<std::uint64_t>(p)});
    const auto a = FourierCoeffs::raw(oracle::uniform_path(63, 1000 + p));
    const double naive = std::pow(64.0 * std::log(64.0), -1.0 / alpha) * 0.5 * oracle::toeplitz_double_sum(a.a, eps.values);
    const double got = normalized_statistic_Xn(a, eps, alpha).x;
    worst = std::max(worst, std::abs(got - naive) / std::abs(naive));
  }
  return {worst <= 1e-10, "max relative gap = " + fmt(worst) + " (tol 1e-10), 50 pairs at n = 64"};
}

Outcome reproducibility() {
  // Every experiment kind, shrunk where the full config is slow; second run on a different thread count.
  struct Case {
    const char* file;
    std::function<void(Json&)> shrink;
  };
  const std::vector<Case> cases{
      {"simulate.json", [](Json&) {}},
      {"coeffs_indicator.json", [](Json&) {}},
      {"covering_holder.json", [](Json&) {}},
      {"fidi_geometric.json", [](Json& j) { j["n_grid"] = {256, 1024}; j["replicates"] = 200; }},
      {"fidi_indicator.json", [](Json& j) { j["n_grid"] = {256, 1024}; j["replicates"] = 200; j["dump_samples"] = true; }},
      {"autocov.json", [](Json& j) { j["n_grid"] = {2048}; j["replicates"] = 300; }},
      {"qform.json", [](Json& j) { j["replicates"] = 5000; }},
      {"remainder.json", [](Json& j) { j["n_grid"] = {256, 512}; j["replicates"] = 100; }},
  };
  std::size_t files = 0;
  for (const auto& c : cases) {
    Json raw = Json::parse(io::read_file(kConfigs / c.file));
    c.shrink(raw);
    const auto cfg = parse_config(raw.dump(), kConfigs);
    for (auto format : {OutputFormat::kCsv, OutputFormat::kJson}) {
      kernels::set_thread_count(1);
      const auto first = run_config(cfg, format);
      kernels::set_thread_count(4);
      const auto second = run_config(cfg, format);
      if (first.size() != second.size()) return {false, std::string(c.file) + ": artifact lists differ"};
      for (std::size_t i = 0; i < first.size(); ++i) {
        if (first[i].name != second[i].name || first[i].content != second[i].content) {
          return {false, std::string(c.file) + ": " + first[i].name + " differs between runs"};
        }
      }
      files += first.size();
    }
  }
  return {true, std::to_string(files) + " artifacts byte-identical across reruns (1 vs 4 threads), " +
                    std::to_string(cases.size()) + " configs x 2 formats"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {"periodogram decomposition identity", periodogram_decomposition},
      {"coefficient form vs quadrature", coefficient_vs_quadrature},
      {"indicator Fourier coefficients", indicator_coefficients},
      {"SaS characteristic function", sas_characteristic_function},
      {"autocovariance scaling limits", autocovariance_scaling},
      {"fidi convergence trend", fidi_trend},
      {"indicator non-tightness signal", indicator_non_tightness},
      {"quadratic-form tail envelopes", tail_bound_envelopes},
      {"remainder negligibility", remainder_negligibility},
      {"entropy fits", entropy_fits},
      {"brute-force equivalence of X_n", brute_force_equivalence},
      {"reproducibility", reproducibility},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failures;
    std::printf("%s [%02d] %s: %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", index, c.name, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
