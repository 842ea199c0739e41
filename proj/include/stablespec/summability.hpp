#pragma once

#include <span>
#include <string>
#include <vector>

#include "stablespec/fourier.hpp"
#include "stablespec/timeseries.hpp"

namespace stablespec {

/// Truncated infinite sum sum_{k=1}^K t_k plus a divergence heuristic on its
/// dyadic blocks B_m = sum_{2^m <= k < 2^{m+1}} t_k. The sum is flagged as
/// diverging when the last three complete blocks each fail to drop below
/// kBlockDecay times their predecessor.
struct SeriesDiagnostic {
  double value = 0.0;
  bool diverging = false;
  std::vector<double> block_sums;  // complete blocks only

  static constexpr double kBlockDecay = 0.95;
  // Coefficients at or below this magnitude are rounding noise for the heuristic.
  static constexpr double kNoiseFloor = 1e-14;
};

/// sum_{h>=1} |a_h|^alpha up to the truncation of `a` (index 0 ignored).
SeriesDiagnostic ell_alpha_norm(std::span<const double> a, double alpha);
inline SeriesDiagnostic ell_alpha_norm(const FourierCoeffs& a, double alpha) { return ell_alpha_norm(a.a, alpha); }

/// h(x) = |x|^alpha log(b + 1/|x|), h(0) = 0.
///
/// For alpha in (0,1) the offset b must make h concave on (0, inf). The
/// smallest such b is located by bisection over [e, e^{4/alpha}], testing the
/// sign of second divided differences on 10^4 log-spaced points in
/// (1e-8, 1e8); select() then uses 1.05 times that minimum. For alpha >= 1
/// concavity is impossible and b = e is used.
class HFunction {
 public:
  HFunction(double alpha, double b);  // throws if b is below the concavity threshold
  static HFunction select(double alpha);

  // Smallest b passing the grid concavity test; e when e already passes.
  static double concavity_threshold(double alpha);

  double operator()(double x) const;
  double alpha() const { return alpha_; }
  double b() const { return b_; }

 private:
  struct Unchecked {};
  HFunction(double alpha, double b, Unchecked) : alpha_(alpha), b_(b) {}
  double alpha_;
  double b_;
};

double h_function(double x, double alpha, double b);

/// sum_k h(a_k) (the l^alpha log l functional) with the same divergence flag.
SeriesDiagnostic ell_alpha_log_norm(std::span<const double> a, double alpha);
/// d(a, b) = sum_k h(a_k - b_k) over the common truncation.
SeriesDiagnostic metric_d(std::span<const double> a, std::span<const double> b, double alpha);

struct CompactFamilyDiagnostic {
  SeriesDiagnostic sup_series;  // sum_k sup_members h(a_k)
  std::string verdict;          // "plausibly-finite" or "diverging"
  std::size_t members = 0;
  std::size_t truncation = 0;
};

/// Checks sum_k sup_{a in A} h(a_k) < inf for a finite family of coefficient sequences.
CompactFamilyDiagnostic condition_compact_family(std::span<const FourierCoeffs> family, double alpha);

enum class TailVerdict { kSatisfied, kViolated, kUnknown };

struct FilterConditionReport {
  double weighted_sum = 0.0;           // over the finite support
  double log_exponent = 0.0;           // (4 - alpha) / (2 alpha) + tau
  TailVerdict tail_verdict = TailVerdict::kUnknown;
  double tail_estimate = 0.0;          // weighted mass beyond the truncation; inf when violated
  bool satisfied() const { return tail_verdict != TailVerdict::kViolated; }
};

/// sum_j |psi_j| |j|^{2/alpha} (1 + log+ |j|)^{(4-alpha)/(2 alpha) + tau}. The
/// j = 0 term has weight 0. A geometric tail tag always satisfies the
/// condition; a power tag |psi_j| ~ |j|^-p does iff p - 2/alpha > 1.
FilterConditionReport filter_condition_check(const LinearFilter& filter, double alpha, double tau);

std::string to_string(TailVerdict v);

}  // namespace stablespec
