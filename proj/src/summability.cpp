#include "stablespec/summability.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "stablespec/error.hpp"

namespace stablespec {

namespace {

template <class Term>
SeriesDiagnostic dyadic_series(std::size_t K, Term&& term) {
  SeriesDiagnostic out;
  std::vector<bool> block_nonzero;
  for (std::size_t lo = 1; lo <= K; lo *= 2) {
    const std::size_t hi = 2 * lo - 1;
    double block = 0.0;
    bool nonzero = false;
    for (std::size_t k = lo; k <= std::min(hi, K); ++k) {
      const auto [value, above_noise] = term(k);
      block += value;
      nonzero = nonzero || above_noise;
    }
    out.value += block;
    if (hi <= K) {
      out.block_sums.push_back(block);
      block_nonzero.push_back(nonzero);
    }
  }
  const std::size_t m = out.block_sums.size();
  if (m >= 4) {
    bool all_flat = true;
    for (std::size_t i = m - 3; i < m; ++i) {
      const double prev = out.block_sums[i - 1];
      const bool decaying = !block_nonzero[i] || !(prev > 0.0) ||
                            out.block_sums[i] < SeriesDiagnostic::kBlockDecay * prev;
      all_flat = all_flat && !decaying;
    }
    out.diverging = all_flat;
  }
  return out;
}

void check_alpha(double alpha, double hi) {
  if (!(alpha > 0.0 && alpha < hi)) {
    throw ParameterDomainError("alpha", "alpha must lie in (0, " + std::to_string(hi) + "), got " + std::to_string(alpha));
  }
}

double h_raw(double x, double alpha, double b) {
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  return std::pow(ax, alpha) * std::log(b + 1.0 / ax);
}

bool concave_on_grid(double alpha, double b) {
  constexpr int kPoints = 10000;
  const double lo = std::log(1e-8);
  const double hi = std::log(1e8);
  auto x_at = [&](int i) { return std::exp(lo + (hi - lo) * i / (kPoints - 1)); };
  double x0 = x_at(0), x1 = x_at(1);
  double h0 = h_raw(x0, alpha, b), h1 = h_raw(x1, alpha, b);
  for (int i = 2; i < kPoints; ++i) {
    const double x2 = x_at(i);
    const double h2 = h_raw(x2, alpha, b);
    const double s01 = (h1 - h0) / (x1 - x0);
    const double s12 = (h2 - h1) / (x2 - x1);
    // Slopes must be nonincreasing; allow rounding-level slack.
    if (s12 - s01 > 1e-12 * (std::abs(s01) + std::abs(s12))) return false;
    x0 = x1;
    h0 = h1;
    x1 = x2;
    h1 = h2;
  }
  return true;
}

}  // namespace

SeriesDiagnostic ell_alpha_norm(std::span<const double> a, double alpha) {
  if (!(alpha > 0.0)) throw ParameterDomainError("alpha", "alpha must be > 0");
  const std::size_t K = a.empty() ? 0 : a.size() - 1;
  return dyadic_series(K, [&](std::size_t k) {
    const double v = std::abs(a[k]);
    return std::pair{std::pow(v, alpha), v > SeriesDiagnostic::kNoiseFloor};
  });
}

double HFunction::concavity_threshold(double alpha) {
  check_alpha(alpha, 1.0);
  static std::mutex mutex;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
  }
  double result = std::numbers::e;
  if (!concave_on_grid(alpha, result)) {
    double lo = 1.0;  // log b
    double hi = 4.0 / alpha;
    if (!concave_on_grid(alpha, std::exp(hi))) {
      throw ToleranceError("b", "no concavity offset found in [e, e^{4/alpha}] for alpha = " + std::to_string(alpha));
    }
    while (hi - lo > 1e-7) {
      const double mid = 0.5 * (lo + hi);
      if (concave_on_grid(alpha, std::exp(mid))) hi = mid;
      else lo = mid;
    }
    result = std::exp(hi);
  }
  std::lock_guard lock(mutex);
  cache.emplace(alpha, result);
  return result;
}

HFunction::HFunction(double alpha, double b) : alpha_(alpha), b_(b) {
  check_alpha(alpha, 1.0);
  const double threshold = concavity_threshold(alpha);
  if (!(b >= threshold)) {
    throw ParameterDomainError("b", "h offset b = " + std::to_string(b) + " is below the concavity threshold " +
                                        std::to_string(threshold) + " for alpha = " + std::to_string(alpha));
  }
}

HFunction HFunction::select(double alpha) {
  check_alpha(alpha, 2.0);
  if (alpha >= 1.0) return HFunction(alpha, std::numbers::e, Unchecked{});
  return HFunction(alpha, 1.05 * concavity_threshold(alpha), Unchecked{});
}

double HFunction::operator()(double x) const { return h_raw(x, alpha_, b_); }

double h_function(double x, double alpha, double b) { return HFunction(alpha, b)(x); }

SeriesDiagnostic ell_alpha_log_norm(std::span<const double> a, double alpha) {
  const auto h = HFunction::select(alpha);
  const std::size_t K = a.empty() ? 0 : a.size() - 1;
  return dyadic_series(K, [&](std::size_t k) {
    return std::pair{h(a[k]), std::abs(a[k]) > SeriesDiagnostic::kNoiseFloor};
  });
}

SeriesDiagnostic metric_d(std::span<const double> a, std::span<const double> b, double alpha) {
  const auto h = HFunction::select(alpha);
  const std::size_t len = std::min(a.size(), b.size());
  const std::size_t K = len == 0 ? 0 : len - 1;
  return dyadic_series(K, [&](std::size_t k) {
    const double diff = a[k] - b[k];
    return std::pair{h(diff), std::abs(diff) > SeriesDiagnostic::kNoiseFloor};
  });
}

CompactFamilyDiagnostic condition_compact_family(std::span<const FourierCoeffs> family, double alpha) {
  if (family.empty()) throw ParameterDomainError("class", "function class must be nonempty");
  const auto h = HFunction::select(alpha);
  std::size_t K = family.front().truncation();
  for (const auto& a : family) K = std::min(K, a.truncation());

  CompactFamilyDiagnostic out;
  out.members = family.size();
  out.truncation = K;
  out.sup_series = dyadic_series(K, [&](std::size_t k) {
    double sup = 0.0;
    double sup_abs = 0.0;
    for (const auto& a : family) {
      sup = std::max(sup, h(a.a[k]));
      sup_abs = std::max(sup_abs, std::abs(a.a[k]));
    }
    return std::pair{sup, sup_abs > SeriesDiagnostic::kNoiseFloor};
  });
  out.verdict = out.sup_series.diverging ? "diverging" : "plausibly-finite";
  return out;
}

FilterConditionReport filter_condition_check(const LinearFilter& filter, double alpha, double tau) {
  check_alpha(alpha, 2.0);
  if (!(tau > 0.0)) throw ParameterDomainError("tau", "tau must be > 0");
  FilterConditionReport out;
  out.log_exponent = (4.0 - alpha) / (2.0 * alpha) + tau;
  const double power = 2.0 / alpha;
  auto weight = [&](double j) {
    return std::pow(j, power) * std::pow(1.0 + std::max(std::log(j), 0.0), out.log_exponent);
  };
  // log w(x) from log x; stays finite where w itself overflows.
  auto log_weight = [&](double log_x) {
    return power * log_x + out.log_exponent * std::log1p(std::max(log_x, 0.0));
  };
  for (int j = filter.min_lag(); j <= filter.max_lag(); ++j) {
    if (j == 0) continue;
    out.weighted_sum += std::abs(filter.coeff(j)) * weight(std::abs(j));
  }

  const auto& tail = filter.tail();
  const double radius = filter.truncation_radius();
  // Tail mass approximated by int_{J+1/2}^inf |psi(x)| w(x) dx, one side per nonzero side of the filter.
  const int sides = (filter.min_lag() < 0 ? 1 : 0) + (filter.max_lag() > 0 ? 1 : 0);
  boost::math::quadrature::exp_sinh<double> tail_integrator;
  switch (tail.kind) {
    case FilterTail::Kind::kNone:
      out.tail_verdict = TailVerdict::kUnknown;
      break;
    case FilterTail::Kind::kGeometric: {
      out.tail_verdict = TailVerdict::kSatisfied;
      const double log_r = std::log(tail.parameter);
      const double start = radius + 0.5;
      out.tail_estimate = sides * tail_integrator.integrate(
                                      [&](double s) {
                                        const double x = start + s;
                                        return std::exp(x * log_r + log_weight(std::log(x)));
                                      },
                                      0.0, std::numeric_limits<double>::infinity());
      break;
    }
    case FilterTail::Kind::kPower: {
      const double excess = tail.parameter - power;
      if (excess > 1.0) {
        out.tail_verdict = TailVerdict::kSatisfied;
        // Substitute x = (J + 1/2) e^u so the slowly decaying integrand is resolved.
        const double start = radius + 0.5;
        out.tail_estimate =
            sides * tail_integrator.integrate(
                        [&](double u) {
                          const double log_x = std::log(start) + u;
                          return std::exp((1.0 - tail.parameter) * log_x + log_weight(log_x));
                        },
                        0.0, std::numeric_limits<double>::infinity());
      } else {
        out.tail_verdict = TailVerdict::kViolated;
        out.tail_estimate = std::numeric_limits<double>::infinity();
      }
      break;
    }
  }
  return out;
}

std::string to_string(TailVerdict v) {
  switch (v) {
    case TailVerdict::kSatisfied: return "satisfied";
    case TailVerdict::kViolated: return "violated";
    case TailVerdict::kUnknown: return "unknown";
  }
  return "unknown";
}

}  // namespace stablespec
