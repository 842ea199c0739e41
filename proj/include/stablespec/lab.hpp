#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stablespec/covering.hpp"
#include "stablespec/fourier.hpp"
#include "stablespec/limit_process.hpp"
#include "stablespec/report.hpp"
#include "stablespec/timeseries.hpp"

namespace stablespec {

struct NormalizedStatistic {
  double x = 0.0;        // X_n(a) = (n log n)^{-1/alpha} sum_{k=1}^{n-1} a_k n gamma_n(k)
  double x_tilde = 0.0;  // (n / log n)^{1/alpha} sum_{k=1}^{n-1} a_k rho_n(k)
};

/// Requires n >= 2. Throws DegenerateError for the self-normalized part when
/// the path is identically zero.
NormalizedStatistic normalized_statistic_Xn(const FourierCoeffs& a, const SamplePath& eps, double alpha);

/// Q(b) = sum_{s != t} b_{s,t} eps_s eps_t over an n x n coefficient table.
class QuadraticFormSpec {
 public:
  // Row-major n x n; the diagonal must be zero.
  QuadraticFormSpec(std::size_t n, std::vector<double> b, std::string label = "dense");
  // b_{s,t} = a_{|s - t|} for s != t.
  static QuadraticFormSpec toeplitz(std::size_t n, const FourierCoeffs& a, std::string label = "toeplitz");

  std::size_t n() const { return n_; }
  double b(std::size_t s, std::size_t t) const { return b_[s * n_ + t]; }
  const std::string& label() const { return label_; }
  bool is_zero() const;

  double evaluate(std::span<const double> eps) const;
  /// Gamma_n(b) = sum_{s != t} |b_{s,t}|^alpha (1 + log+ (1/|b_{s,t}|)); zero entries add nothing.
  double gamma_n(double alpha) const;

 private:
  std::size_t n_;
  std::vector<double> b_;
  std::string label_;
};

/// r(x) = p x^alpha / ((1 + log+ x) Gamma). Throws DegenerateError when Gamma is 0.
double implied_constant_ratio(double p, double x, double alpha, double gamma);

struct FidiConfig {
  double alpha = 1.5;
  FourierCoeffs a;
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 1000;
  std::uint64_t seed = 1;
  LimitScales scales;
  std::size_t limit_draws = 0;  // 0: same as replicates
  double hill_fraction = 0.05;
  std::size_t bootstrap = 200;
  bool keep_samples = false;
};

/// Per n: samples of X_n(a) and its self-normalized version, standardized KS
/// distances to draws of Y(a) and Y(a) / Y_0, Hill index and IQR, each with a
/// bootstrap standard error; trend verdicts on the KS distances across n.
ExperimentReport fidi_experiment(const FidiConfig& config);

struct AutocovScalingConfig {
  double alpha = 1.5;
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 2000;
  std::uint64_t seed = 1;
  std::size_t lags = 2;
  double hill_fraction = 0.05;
  double hill_tolerance_zero = 0.15;
  double hill_tolerance_lag = 0.2;
};

/// n gamma_n(0) / n^{2/alpha} and n gamma_n(h) / (n log n)^{1/alpha} on
/// i.i.d. paths: positivity, Hill indices and lag-1/lag-2 sign correlation.
ExperimentReport autocov_scaling_experiment(const AutocovScalingConfig& config);

struct QformTailConfig {
  double alpha = 0.7;
  std::vector<double> x_grid{1.0, 4.0, 16.0, 64.0};
  std::size_t replicates = 100000;
  std::uint64_t seed = 1;
  bool cauchy_multipliers = false;  // b_{s,t} C_{s,t} with C i.i.d. S_1(1, 0, 0)
  double envelope_factor = 10.0;
};

struct QformTailResult {
  std::vector<double> exceedance;  // P(Q > x) per x_grid entry
  std::vector<double> ratio;       // empty when Gamma_n(b) = 0
  double gamma = 0.0;
  double envelope = 0.0;           // max ratio
};

QformTailResult quadratic_form_tail(const QuadraticFormSpec& spec, const QformTailConfig& config,
                                    const RngStream& stream);

/// Runs every spec (spec i on stream child i) and compares the ratio
/// envelopes: the verdict holds when max / min envelope over the nonzero
/// specs stays below envelope_factor.
ExperimentReport quadratic_form_tail_check(std::span<const QuadraticFormSpec> specs, const QformTailConfig& config);

struct RemainderConfig {
  double alpha = 1.5;
  LinearFilter filter = LinearFilter::ma1(0.5);
  FunctionClass cls;
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 500;
  std::uint64_t seed = 1;
  double tau = 0.1;
  std::size_t bootstrap = 200;
  bool keep_samples = false;
};

/// n (n log n)^{-1/alpha} max_f |int f R_n| over the class: median and
/// 0.9-quantile per n with trend verdicts.
ExperimentReport remainder_negligibility_experiment(const RemainderConfig& config);

/// Default dyadic grid 2^8 .. 2^14.
std::vector<std::size_t> default_n_grid();

}  // namespace stablespec
