#include "stablespec/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include "stablespec/error.hpp"
#include "stablespec/kernels.hpp"

namespace stablespec {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t block_end(int k) { return (std::size_t{1} << (k + 1)) - 1; }

double rho_k_unchecked(const std::vector<double>& a, const std::vector<double>& b, int k) {
  double out = 0.0;
  for (std::size_t j = std::size_t{1} << k; j <= block_end(k); ++j) {
    out = std::max(out, static_cast<double>(j) * std::abs(a[j] - b[j]));
  }
  return out;
}

using Bits = std::vector<std::uint64_t>;

std::size_t count_and(const Bits& a, const Bits& b) {
  std::size_t c = 0;
  for (std::size_t w = 0; w < a.size(); ++w) c += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  return c;
}

Cover finish_cover(std::vector<std::size_t> centers, std::span<const double> distances, std::size_t members,
                   double epsilon) {
  Cover cover;
  cover.centers = std::move(centers);
  cover.assignment.assign(members, 0);
  for (std::size_t i = 0; i < members; ++i) {
    for (std::size_t c = 0; c < cover.centers.size(); ++c) {
      if (distances[cover.centers[c] * members + i] < epsilon) {
        cover.assignment[i] = c;
        break;
      }
    }
  }
  return cover;
}

void check_cover_args(std::span<const double> distances, std::size_t members, double epsilon) {
  if (members == 0) throw ParameterDomainError("class", "cannot cover an empty class");
  if (distances.size() != members * members) throw ParameterDomainError("distances", "distance matrix has wrong size");
  if (!(epsilon > 0.0)) throw ParameterDomainError("epsilon", "covering radius must be > 0");
}

}  // namespace

FunctionClass FunctionClass::indicator_family(std::size_t count) {
  if (count == 0) throw ParameterDomainError("count", "indicator family needs at least one member");
  FunctionClass cls;
  cls.kind = ClassKind::kIndicatorVC;
  for (std::size_t i = 1; i <= count; ++i) {
    cls.members.push_back(FunctionSpec::indicator(kPi * static_cast<double>(i) / static_cast<double>(count)));
  }
  std::ostringstream d;
  d << "indicator theta = pi*i/" << count << ", i=1.." << count;
  cls.discretization = d.str();
  return cls;
}

FunctionClass FunctionClass::holder_cantor_family(double width, int levels, double ratio, double lo, double hi) {
  if (!(ratio > 0.0 && ratio < 0.5)) throw ParameterDomainError("ratio", "Cantor ratio must lie in (0, 0.5)");
  if (levels < 0 || levels > 20) throw ParameterDomainError("levels", "Cantor levels must lie in [0, 20]");
  if (!(lo >= 0.0 && hi > lo && hi + width <= kPi)) {
    throw ParameterDomainError("interval", "Cantor interval must satisfy 0 <= lo < hi and hi + width <= pi");
  }
  std::vector<double> starts{lo};
  double len = hi - lo;
  for (int l = 0; l < levels; ++l) {
    const double sub = len * ratio;
    std::vector<double> next;
    next.reserve(starts.size() * 2);
    for (double s : starts) {
      next.push_back(s);
      next.push_back(s + len - sub);
    }
    starts = std::move(next);
    len = sub;
  }
  FunctionClass cls;
  cls.kind = ClassKind::kHolder;
  for (double s : starts) cls.members.emplace_back(HolderMemberFn{"ramp", width, s});
  std::ostringstream d;
  d.precision(6);
  d << "ramp(width=" << width << ") over Cantor set in [" << lo << ", " << hi << "], ratio " << ratio << ", "
    << levels << " levels (" << starts.size() << " members, index exponent "
    << std::log(2.0) / std::log(1.0 / ratio) << ")";
  cls.discretization = d.str();
  return cls;
}

std::vector<FourierCoeffs> coefficient_table(const FunctionClass& cls, std::size_t K) {
  std::vector<FourierCoeffs> table(cls.members.size());
  kernels::for_each_replicate(cls.members.size(),
                              [&](std::size_t i) { table[i] = fourier_coeffs(cls.members[i], K); });
  return table;
}

double pseudo_metric_rho_k(const FourierCoeffs& f, const FourierCoeffs& g, int k) {
  if (k < 0 || k > 30) throw ParameterDomainError("k", "block index must lie in [0, 30]");
  const std::size_t need = block_end(k);
  if (f.truncation() < need || g.truncation() < need) {
    throw TruncationError("K", "rho_" + std::to_string(k) + " needs coefficients through lag " + std::to_string(need));
  }
  return rho_k_unchecked(f.a, g.a, k);
}

double pseudo_metric_rho_k(const FunctionSpec& f, const FunctionSpec& g, int k) {
  if (k < 0 || k > 30) throw ParameterDomainError("k", "block index must lie in [0, 30]");
  const std::size_t K = block_end(k);
  return pseudo_metric_rho_k(fourier_coeffs(f, K), fourier_coeffs(g, K), k);
}

std::vector<double> rho_k_matrix(std::span<const FourierCoeffs> table, int k) {
  const std::size_t m = table.size();
  for (const auto& row : table) {
    if (row.truncation() < block_end(k)) {
      throw TruncationError("K", "coefficient table too short for rho_" + std::to_string(k));
    }
  }
  std::vector<double> d(m * m, 0.0);
  kernels::for_each_replicate(m, [&](std::size_t i) {
    for (std::size_t j = 0; j < m; ++j) d[i * m + j] = rho_k_unchecked(table[i].a, table[j].a, k);
  });
  return d;
}

Cover greedy_cover(std::span<const double> distances, std::size_t members, double epsilon) {
  check_cover_args(distances, members, epsilon);
  const std::size_t words = (members + 63) / 64;
  std::vector<Bits> balls(members, Bits(words, 0));
  kernels::for_each_replicate(members, [&](std::size_t i) {
    for (std::size_t j = 0; j < members; ++j) {
      if (distances[i * members + j] < epsilon) balls[i][j / 64] |= std::uint64_t{1} << (j % 64);
    }
  });
  Bits uncovered(words, 0);
  for (std::size_t j = 0; j < members; ++j) uncovered[j / 64] |= std::uint64_t{1} << (j % 64);

  std::vector<std::size_t> gain(members);
  std::vector<std::size_t> centers;
  std::size_t remaining = members;
  while (remaining > 0) {
    const auto m = static_cast<long long>(members);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < m; ++i) {
      gain[static_cast<std::size_t>(i)] = count_and(balls[static_cast<std::size_t>(i)], uncovered);
    }
    // First maximum; serial scan keeps the tie rule deterministic.
    const auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    centers.push_back(best);
    for (std::size_t w = 0; w < words; ++w) uncovered[w] &= ~balls[best][w];
    remaining -= gain[best];
  }
  return finish_cover(std::move(centers), distances, members, epsilon);
}

Cover greedy_cover_serial(std::span<const double> distances, std::size_t members, double epsilon) {
  check_cover_args(distances, members, epsilon);
  std::vector<bool> covered(members, false);
  std::vector<std::size_t> centers;
  std::size_t remaining = members;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < members; ++i) {
      std::size_t g = 0;
      for (std::size_t j = 0; j < members; ++j) {
        if (!covered[j] && distances[i * members + j] < epsilon) ++g;
      }
      if (g > best_gain) {
        best_gain = g;
        best = i;
      }
    }
    centers.push_back(best);
    for (std::size_t j = 0; j < members; ++j) {
      if (!covered[j] && distances[best * members + j] < epsilon) {
        covered[j] = true;
        --remaining;
      }
    }
  }
  return finish_cover(std::move(centers), distances, members, epsilon);
}

std::size_t covering_number(std::span<const FourierCoeffs> table, double epsilon, int k) {
  const auto d = rho_k_matrix(table, k);
  return greedy_cover(d, table.size(), epsilon).size();
}

EntropyFit entropy_condition_fit(const FunctionClass& cls, double beta_candidate, std::span<const double> eps_grid,
                                 std::span<const int> k_grid, double alpha) {
  if (!(beta_candidate > 0.0)) throw ParameterDomainError("beta_candidate", "beta must be > 0");
  if (cls.members.empty()) throw ParameterDomainError("class", "function class must be nonempty");
  if (eps_grid.empty() || k_grid.empty()) throw ParameterDomainError("grid", "epsilon and k grids must be nonempty");
  int k_max = 0;
  for (int k : k_grid) {
    if (k < 0 || k > 20) throw ParameterDomainError("k_grid", "block indices must lie in [0, 20]");
    k_max = std::max(k_max, k);
  }
  for (double e : eps_grid) {
    if (!(e > 0.0)) throw ParameterDomainError("eps_grid", "covering radii must be > 0");
  }

  EntropyFit fit;
  fit.members = cls.members.size();
  fit.beta_candidate = beta_candidate;
  fit.alpha = alpha;
  const auto table = coefficient_table(cls, block_end(k_max));

  for (int k : k_grid) {
    const auto d = rho_k_matrix(table, k);
    for (double eps : eps_grid) {
      CoveringPoint p{k, eps, greedy_cover(d, table.size(), eps).size(), false};
      p.used_in_fit = p.covering > 1 && 2 * p.covering < fit.members;
      fit.points.push_back(p);
    }
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (const auto& p : fit.points) {
    const double scale = std::ldexp(1.0, p.k) / p.epsilon;
    fit.empirical_constant =
        std::max(fit.empirical_constant, static_cast<double>(p.covering) / (1.0 + std::pow(scale, beta_candidate)));
    if (!p.used_in_fit) continue;
    const double x = std::log(scale);
    const double y = std::log(static_cast<double>(p.covering));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used >= 2) {
    const double n = static_cast<double>(used);
    const double denom = n * sxx - sx * sx;
    if (denom > 0.0) {
      fit.slope = (n * sxy - sx * sy) / denom;
      fit.intercept = (sy - fit.slope * sx) / n;
    }
  }
  fit.holds = fit.slope <= beta_candidate && beta_candidate < alpha;
  return fit;
}

}  // namespace stablespec
