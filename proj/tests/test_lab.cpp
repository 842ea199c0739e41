#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "stablespec/error.hpp"
#include "stablespec/lab.hpp"
#include "stablespec/stable.hpp"
#include "stablespec/statistics.hpp"

using namespace stablespec;

TEST(Ks, IdenticalAndDisjoint) {
  const std::vector<double> a{3, 1, 2, 5, 4};
  EXPECT_EQ(ks_distance(a, a), 0.0);
  const std::vector<double> b{10, 11, 12};
  EXPECT_EQ(ks_distance(a, b), 1.0);
  EXPECT_EQ(ks_distance(b, a), 1.0);
  const std::vector<double> c(7, 2.0);
  EXPECT_EQ(ks_distance(c, c), 0.0);
  // F_a(2) = 2/5 against F_{c}(2) = 1.
  EXPECT_NEAR(ks_distance(a, c), 0.6, 1e-15);
}

TEST(Ks, MatchesBruteForceSupremum) {
  const auto a = oracle::uniform_path(300, 1);
  const auto b = oracle::uniform_path(211, 2, -0.8, 1.3);
  double want = 0.0;
  std::vector<double> all(a);
  all.insert(all.end(), b.begin(), b.end());
  for (double x : all) {
    const double fa = std::count_if(a.begin(), a.end(), [x](double v) { return v <= x; }) / double(a.size());
    const double fb = std::count_if(b.begin(), b.end(), [x](double v) { return v <= x; }) / double(b.size());
    want = std::max(want, std::abs(fa - fb));
  }
  EXPECT_NEAR(ks_distance(a, b), want, 1e-15);
}

TEST(Hill, ParetoOracle) {
  const auto x = oracle::pareto(100000, 2.0, 9);
  const double h = hill_tail_index(x, 0.01);
  EXPECT_GE(h, 1.8);
  EXPECT_LE(h, 2.2);
}

TEST(Hill, Preconditions) {
  const auto x = oracle::pareto(1000, 2.0, 9);
  EXPECT_THROW(hill_tail_index(x, 0.0), ParameterDomainError);
  EXPECT_THROW(hill_tail_index(x, 0.2), ParameterDomainError);
  EXPECT_THROW(hill_tail_index(std::vector<double>(50, 1.0), 0.1), DegenerateError);
  EXPECT_THROW(hill_tail_index(std::vector<double>{1.0, 2.0}, 0.1), DegenerateError);
}

TEST(Quantiles, TypeSeven) {
  const std::vector<double> x{4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(median(x), 2.5);
  EXPECT_DOUBLE_EQ(quantile(x, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(iqr(x), 1.5);
  const auto z = standardize(x);
  EXPECT_DOUBLE_EQ(z[0], 1.0);
  const auto flat = standardize(std::vector<double>{2, 2, 2});
  EXPECT_EQ(flat, (std::vector<double>{0, 0, 0}));
}

TEST(Bootstrap, MeanStandardError) {
  const auto x = oracle::uniform_path(2000, 4, 0.0, 1.0);
  auto mean = [](std::span<const double> s) {
    double t = 0;
    for (double v : s) t += v;
    return t / s.size();
  };
  const double se = bootstrap_se(x, mean, 200, {1, 1});
  const double want = std::sqrt(1.0 / 12.0 / 2000.0);
  EXPECT_NEAR(se / want, 1.0, 0.15);
  EXPECT_EQ(se, bootstrap_se(x, mean, 200, {1, 1}));
}

TEST(Trend, BandRule) {
  const std::vector<double> v{0.30, 0.31, 0.20, 0.22};
  const std::vector<double> tight{0.001, 0.001, 0.001, 0.001};
  const std::vector<double> loose{0.01, 0.01, 0.01, 0.01};
  const auto t = nonincreasing_within_band(v, tight);
  EXPECT_FALSE(t.holds);
  EXPECT_EQ(t.first_violation, 0u);
  EXPECT_TRUE(nonincreasing_within_band(v, loose).holds);
  EXPECT_TRUE(nondecreasing_within_band(std::vector<double>{1, 2, 1.999, 3}, tight).holds);
  EXPECT_FALSE(nondecreasing_within_band(std::vector<double>{1, 2, 1.9, 3}, tight).holds);
}

TEST(SignCorrelation, PerfectAndOpposite) {
  const std::vector<double> a{1, -2, 3, -4};
  const std::vector<double> b{-1, 2, -3, 4};
  EXPECT_NEAR(sign_correlation(a, a), 1.0, 1e-15);
  EXPECT_NEAR(sign_correlation(a, b), -1.0, 1e-15);
}

TEST(NormalizedStatistic, ZeroAndUnitCoefficients) {
  SamplePath p;
  p.values = {0.7, -1.9};
  EXPECT_EQ(normalized_statistic_Xn(FourierCoeffs::geometric(0.0, 4), p, 1.5).x, 0.0);
  const auto s = normalized_statistic_Xn(FourierCoeffs::unit(1, 4), p, 1.5);
  EXPECT_NEAR(s.x, std::pow(2 * std::log(2.0), -1 / 1.5) * 0.7 * -1.9, 1e-15);
  EXPECT_NEAR(s.x_tilde, std::pow(2 / std::log(2.0), 1 / 1.5) * (0.7 * -1.9) / (0.7 * 0.7 + 1.9 * 1.9), 1e-15);
  SamplePath one;
  one.values = {1.0};
  EXPECT_THROW(normalized_statistic_Xn(FourierCoeffs::unit(1, 4), one, 1.5), ParameterDomainError);
  SamplePath zero;
  zero.values = {0.0, 0.0, 0.0};
  EXPECT_THROW(normalized_statistic_Xn(FourierCoeffs::unit(1, 4), zero, 1.5), DegenerateError);
}

TEST(NormalizedStatistic, BruteForceDoubleSum) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto eps = simulate_iid(64, 1.2, {seed, 40});
    const auto a = FourierCoeffs::raw(oracle::uniform_path(63, seed + 100));
    double naive = 0.0;
    for (std::size_t k = 1; k < 64; ++k) {
      double s = 0.0;
      for (std::size_t t = 0; t + k < 64; ++t) s += eps.values[t] * eps.values[t + k];
      naive += a[k] * s;
    }
    naive *= std::pow(64 * std::log(64.0), -1 / 1.2);
    const double got = normalized_statistic_Xn(a, eps, 1.2).x;
    EXPECT_LE(std::abs(got - naive), 1e-10 * std::abs(naive)) << seed;
    // Same thing as half of a symmetric Toeplitz quadratic form.
    const double q = QuadraticFormSpec::toeplitz(64, a).evaluate(eps.values);
    EXPECT_NEAR(q / 2 * std::pow(64 * std::log(64.0), -1 / 1.2), naive, 1e-10 * std::abs(naive));
  }
}

TEST(NormalizedStatistic, SelfNormalizedScaleInvariance) {
  const auto eps = simulate_iid(256, 0.9, {41, 1});
  const auto a = FourierCoeffs::geometric(0.5, 60);
  const double base = normalized_statistic_Xn(a, eps, 0.9).x_tilde;
  for (double c : {2.0, 0.25, -1.0, -8.0}) {
    SamplePath s = eps;
    for (auto& v : s.values) v *= c;
    EXPECT_EQ(normalized_statistic_Xn(a, s, 0.9).x_tilde, base) << c;
  }
  for (double c : {3.7, -0.013, 1e5}) {
    SamplePath s = eps;
    for (auto& v : s.values) v *= c;
    EXPECT_NEAR(normalized_statistic_Xn(a, s, 0.9).x_tilde, base, 1e-12 * std::abs(base)) << c;
  }
}

TEST(QuadraticForm, ValidationAndGamma) {
  EXPECT_THROW(QuadraticFormSpec(2, {1.0, 0.5, 0.5, 0.0}), ParameterDomainError);
  const QuadraticFormSpec q(2, {0.0, 0.5, 0.5, 0.0});
  const double g = 2 * std::pow(0.5, 0.7) * (1 + std::log(2.0));
  EXPECT_NEAR(q.gamma_n(0.7), g, 1e-15);
  const std::vector<double> eps{3.0, -2.0};
  EXPECT_NEAR(q.evaluate(eps), -6.0, 1e-15);
  EXPECT_EQ(QuadraticFormSpec(3, std::vector<double>(9, 0.0)).gamma_n(0.7), 0.0);
  EXPECT_NEAR(implied_constant_ratio(0.1, 4.0, 0.7, 2.0), 0.1 * std::pow(4.0, 0.7) / ((1 + std::log(4.0)) * 2.0), 1e-15);
  EXPECT_THROW(implied_constant_ratio(0.1, 4.0, 0.7, 0.0), DegenerateError);
}

TEST(QuadraticForm, ZeroSpecIsVacuous) {
  const QuadraticFormSpec zero(4, std::vector<double>(16, 0.0), "zero");
  QformTailConfig cfg;
  cfg.replicates = 1000;
  const auto res = quadratic_form_tail(zero, cfg, {1, 1});
  for (double p : res.exceedance) EXPECT_EQ(p, 0.0);
  EXPECT_TRUE(res.ratio.empty());
  const std::vector<QuadraticFormSpec> specs{zero};
  const auto report = quadratic_form_tail_check(specs, cfg);
  EXPECT_FALSE(report.warnings.empty());
  ASSERT_NE(report.verdict("envelope_spread"), nullptr);
  EXPECT_TRUE(report.verdict("envelope_spread")->pass);
}

TEST(QuadraticForm, ProductOfStablesOracle) {
  const double alpha = 0.7;
  const std::size_t reps = 200000;
  QformTailConfig cfg;
  cfg.alpha = alpha;
  cfg.replicates = reps;
  const QuadraticFormSpec q(2, {0.0, 0.5, 0.5, 0.0}, "pair");
  const auto res = quadratic_form_tail(q, cfg, {50, 1});
  const auto e1 = sample_sas(StableLaw::symmetric(alpha), {51, 1}, reps);
  const auto e2 = sample_sas(StableLaw::symmetric(alpha), {51, 2}, reps);
  for (std::size_t i = 0; i < cfg.x_grid.size(); ++i) {
    const double x = cfg.x_grid[i];
    double hits = 0;
    for (std::size_t r = 0; r < reps; ++r) hits += e1[r] * e2[r] > x;
    EXPECT_LE(std::abs(res.exceedance[i] - hits / reps), 3.0 / std::sqrt(double(reps))) << x;
  }
}

TEST(QuadraticForm, ZeroExceedanceGivesZeroRatio) {
  QformTailConfig cfg;
  cfg.replicates = 200;
  cfg.x_grid = {1e300};
  const auto res = quadratic_form_tail(QuadraticFormSpec::toeplitz(8, FourierCoeffs::geometric(0.5, 7)), cfg, {1, 1});
  EXPECT_EQ(res.exceedance[0], 0.0);
  EXPECT_EQ(res.ratio[0], 0.0);
}

TEST(Fidi, ZeroCoefficientsGiveZeroStatistics) {
  FidiConfig cfg;
  cfg.alpha = 1.5;
  cfg.a = FourierCoeffs::geometric(0.0, 10);
  cfg.n_grid = {64, 128};
  cfg.replicates = 50;
  cfg.bootstrap = 20;
  const auto r = fidi_experiment(cfg);
  for (std::size_t n : cfg.n_grid) {
    EXPECT_EQ(r.row("ks_x", n).value, 0.0);
    EXPECT_EQ(r.row("ks_x_tilde", n).value, 0.0);
    EXPECT_EQ(r.row("iqr_x", n).value, 0.0);
  }
}

TEST(Fidi, UnitVectorTailIndex) {
  FidiConfig cfg;
  cfg.alpha = 1.5;
  cfg.a = FourierCoeffs::unit(1, 4);
  cfg.n_grid = {16384};
  cfg.replicates = 2000;
  cfg.bootstrap = 20;
  const auto r = fidi_experiment(cfg);
  const double h = r.row("hill_x", 16384).value;
  EXPECT_GE(h, 1.3);
  EXPECT_LE(h, 1.7);
}

TEST(Fidi, IndicatorFlagsNonTightness) {
  FidiConfig cfg;
  cfg.alpha = 0.8;
  cfg.a = fourier_coeffs(FunctionSpec::indicator(1.0), 1024);
  cfg.n_grid = {64, 256};
  cfg.replicates = 100;
  cfg.bootstrap = 20;
  const auto r = fidi_experiment(cfg);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_NE(r.verdict("iqr_x_nonshrinking"), nullptr);
}

TEST(Fidi, ReportsAreDeterministic) {
  FidiConfig cfg;
  cfg.alpha = 1.2;
  cfg.a = FourierCoeffs::geometric(0.5, 20);
  cfg.n_grid = {64, 128};
  cfg.replicates = 200;
  cfg.bootstrap = 30;
  EXPECT_EQ(to_json(fidi_experiment(cfg)).dump(), to_json(fidi_experiment(cfg)).dump());
}

TEST(Autocov, PositivityAndIndependenceDiagnostics) {
  AutocovScalingConfig cfg;
  cfg.alpha = 1.2;
  cfg.n_grid = {1024};
  cfg.replicates = 2000;
  const auto r = autocov_scaling_experiment(cfg);
  EXPECT_EQ(r.row("gamma0_positive_fraction", 1024).value, 1.0);
  const double h0 = r.row("hill_gamma0", 1024).value;
  EXPECT_GE(h0, 0.45);
  EXPECT_LE(h0, 0.75);
  EXPECT_LE(std::abs(r.row("sign_corr_lag1_lag2", 1024).value), 3.0 / std::sqrt(2000.0));
}

TEST(Remainder, IdentityFilterIsExactlyZero) {
  RemainderConfig cfg;
  cfg.filter = LinearFilter::identity();
  cfg.cls.members = {FunctionSpec::constant(1.0), FunctionSpec::indicator(1.0)};
  cfg.n_grid = {64, 128};
  cfg.replicates = 40;
  cfg.bootstrap = 20;
  const auto r = remainder_negligibility_experiment(cfg);
  for (std::size_t n : cfg.n_grid) {
    EXPECT_EQ(r.row("median", n).value, 0.0);
    EXPECT_EQ(r.row("q90", n).value, 0.0);
  }
}

TEST(Remainder, ViolatedFilterWarnsAndRuns) {
  RemainderConfig cfg;
  cfg.filter = LinearFilter::power_law(1.5, 30);
  cfg.cls.members = {FunctionSpec::constant(1.0)};
  cfg.n_grid = {64, 128};
  cfg.replicates = 20;
  cfg.bootstrap = 10;
  const auto r = remainder_negligibility_experiment(cfg);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_EQ(r.series("median").size(), 2u);
}
