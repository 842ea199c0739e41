#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "stablespec/error.hpp"
#include "stablespec/kernels.hpp"
#include "stablespec/statistics.hpp"
#include "stablespec/timeseries.hpp"

using namespace stablespec;

namespace {

SamplePath path_of(std::vector<double> v) {
  SamplePath p;
  p.values = std::move(v);
  p.alpha = 1.5;
  return p;
}

}  // namespace

TEST(SimulateIid, LengthAndDeterminism) {
  const RngStream s{5, 1};
  EXPECT_EQ(simulate_iid(1, 1.5, s).size(), 1u);
  EXPECT_EQ(simulate_iid(100, 1.5, s).values, simulate_iid(100, 1.5, s).values);
  EXPECT_NE(simulate_iid(100, 1.5, s).values, simulate_iid(100, 1.5, s.child(1)).values);
  EXPECT_EQ(simulate_iid(10, 1.5, s).provenance.origin, PathOrigin::kIid);
}

TEST(SimulateIid, RejectsAlphaOutsideOpenInterval) {
  EXPECT_THROW(simulate_iid(10, 2.0, {1, 1}), ParameterDomainError);
  EXPECT_THROW(simulate_iid(10, 0.0, {1, 1}), ParameterDomainError);
  EXPECT_THROW(simulate_iid(10, -1.0, {1, 1}), ParameterDomainError);
}

TEST(SimulateIid, HillIndexNearAlpha) {
  const auto p = simulate_iid(1000000, 1.2, {6, 1});
  const double hill = hill_tail_index(p.values, 0.01);
  EXPECT_GE(hill, 1.05);
  EXPECT_LE(hill, 1.35);
}

TEST(SimulateLinear, IdentityMatchesIidBitwise) {
  const RngStream s{7, 1};
  const auto sim = simulate_linear(50, LinearFilter::identity(), 1.5, s);
  EXPECT_EQ(sim.process.values, sim.innovations.values);
  EXPECT_EQ(sim.process.values, simulate_iid(50, 1.5, s).values);
}

TEST(SimulateLinear, ScaledIdentity) {
  const auto sim = simulate_linear(40, LinearFilter::scaled_identity(0.5), 1.1, {8, 1});
  for (std::size_t t = 0; t < 40; ++t) ASSERT_EQ(sim.process.values[t], 0.5 * sim.innovations.values[t]);
}

TEST(SimulateLinear, Ma1MatchesHandConvolution) {
  const double theta = 0.7;
  const auto sim = simulate_linear(4, LinearFilter::ma1(theta), 1.5, {9, 1});
  for (long t = 1; t <= 4; ++t) {
    const double want = sim.innovation_at(t) + theta * sim.innovation_at(t - 1);
    EXPECT_DOUBLE_EQ(sim.process.values[t - 1], want) << t;
    EXPECT_EQ(sim.innovations.values[t - 1], sim.innovation_at(t));
  }
}

TEST(SimulateLinear, TwoSidedFilterMatchesBruteForce) {
  const LinearFilter f(-2, {0.3, -0.2, 1.0, 0.5, 0.25});
  const auto sim = simulate_linear(30, f, 0.9, {10, 1});
  EXPECT_EQ(sim.all_innovations.size(), 30u + 4u);
  for (long t = 1; t <= 30; ++t) {
    double want = 0.0;
    for (int j = -2; j <= 2; ++j) want += f.coeff(j) * sim.innovation_at(t - j);
    EXPECT_NEAR(sim.process.values[t - 1], want, 1e-12 * (1.0 + std::abs(want)));
  }
}

TEST(LinearFilter, ParseRoundTrip) {
  for (const auto& f : {LinearFilter::ma1(0.5), LinearFilter::identity(), LinearFilter(-1, {0.5, 1.0, 0.25}),
                        LinearFilter::geometric(0.5, 20), LinearFilter::power_law(3.0, 50)}) {
    EXPECT_EQ(LinearFilter::parse(f.describe()), f) << f.describe();
  }
  EXPECT_THROW(LinearFilter(0, {0.0, 0.0}), ParameterDomainError);
}

TEST(SampleAutocov, HandExamples) {
  EXPECT_DOUBLE_EQ(sample_autocov(path_of({1, 1, 1, 1}), 1), 0.75);
  EXPECT_DOUBLE_EQ(sample_autocov(path_of({1, -1, 1, -1}), 1), -0.75);
  EXPECT_EQ(sample_autocov(path_of({1, 2, 3, 4}), 4), 0.0);
  EXPECT_EQ(sample_autocov(path_of({1, 2, 3, 4}), 9), 0.0);
}

TEST(SampleAutocorr, HandExamples) {
  EXPECT_DOUBLE_EQ(sample_autocorr(path_of({1, 1, 1, 1}), 1), 0.75);
  EXPECT_DOUBLE_EQ(sample_autocorr(path_of({2, 2, 2, 2}), 1), 0.75);
  EXPECT_DOUBLE_EQ(sample_autocorr(path_of({0.3, -2, 5}), 0), 1.0);
  EXPECT_THROW(sample_autocorr(path_of({0, 0, 0}), 1), DegenerateError);
}

TEST(SampleAutocov, CauchySchwarzAndScaling) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto p = simulate_iid(64, 0.8, {seed, 3});
    const double g0 = sample_autocov(p, 0);
    SamplePath scaled = p;
    for (auto& v : scaled.values) v *= -2.5;
    for (std::size_t h = 0; h < 70; ++h) {
      ASSERT_LE(std::abs(sample_autocov(p, h)), g0 * (1 + 1e-15));
      ASSERT_NEAR(sample_autocov(scaled, h), 6.25 * sample_autocov(p, h), 1e-12 * 6.25 * g0);
      if (h < 64) ASSERT_NEAR(sample_autocorr(scaled, h), sample_autocorr(p, h), 1e-14);
    }
  }
}

TEST(AutocovLags, AgreesWithDirectSums) {
  for (std::size_t n : {1u, 2u, 17u, 300u, 2048u}) {
    const auto x = oracle::uniform_path(n, n);
    const auto lags = autocov_lags(x, std::min<std::size_t>(n + 3, 400));
    for (std::size_t h = 0; h < lags.size(); ++h) {
      ASSERT_NEAR(lags[h], oracle::autocov(x, h), 1e-12) << "n=" << n << " h=" << h;
    }
  }
}

TEST(Kernels, SerialAndParallelAgree) {
  kernels::set_thread_count(4);
  const auto x = oracle::uniform_path(1500, 77);
  EXPECT_EQ(kernels::serial::autocov_lags(x, 200), kernels::parallel::autocov_lags(x, 200));
  std::vector<double> lambdas;
  for (int i = 0; i < 64; ++i) lambdas.push_back(3.14159 * i / 63.0);
  EXPECT_EQ(kernels::serial::periodogram_grid(x, lambdas), kernels::parallel::periodogram_grid(x, lambdas));
  const auto w = oracle::uniform_path(900, 78);
  EXPECT_EQ(kernels::serial::weighted_autocov_sum(x, w), kernels::parallel::weighted_autocov_sum(x, w));
  const auto fft = kernels::fft::autocov_lags(x, 200);
  const auto direct = kernels::serial::autocov_lags(x, 200);
  for (std::size_t h = 0; h <= 200; ++h) ASSERT_NEAR(fft[h], direct[h], 1e-12);
}

TEST(Kernels, ReplicateLoopIsOrderIndependent) {
  kernels::set_thread_count(3);
  std::vector<double> a(257), b(257);
  const RngStream s{3, 3};
  kernels::for_each_replicate(a.size(), [&](std::size_t i) { a[i] = simulate_iid(33, 1.1, s.child(i)).values[5]; });
  kernels::for_each_replicate_serial(b.size(),
                                     [&](std::size_t i) { b[i] = simulate_iid(33, 1.1, s.child(i)).values[5]; });
  EXPECT_EQ(a, b);
  EXPECT_THROW(kernels::for_each_replicate(10,
                                           [](std::size_t i) {
                                             if (i == 7) throw DegenerateError("x", "boom");
                                           }),
               DegenerateError);
}
