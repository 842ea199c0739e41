#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stablespec/fourier.hpp"

namespace stablespec {

enum class ClassKind { kHolder, kIndicatorVC, kCustom };

/// A finite discretization of an index class F.
struct FunctionClass {
  std::vector<FunctionSpec> members;
  ClassKind kind = ClassKind::kCustom;
  std::string discretization;  // human-readable grid description for reports

  /// I_{[0, theta_i]} with theta_i = pi i / count, i = 1..count.
  static FunctionClass indicator_family(std::size_t count);

  /// Ramp members g_theta over a Cantor-type index set in [lo, hi]: `levels`
  /// rounds of keeping the two outer sub-intervals of relative length
  /// `ratio`, then the left endpoints. The index set has covering exponent
  /// a = log 2 / log(1/ratio) in |theta - theta'|; the ramp family is
  /// Hoelder with exponent b = 1, so a/b = a.
  static FunctionClass holder_cantor_family(double width, int levels, double ratio, double lo, double hi);
};

/// Coefficients of every member through a common truncation, computed in parallel.
std::vector<FourierCoeffs> coefficient_table(const FunctionClass& cls, std::size_t K);

/// rho_k(f, g) = max_{2^k <= j < 2^{k+1}} j |a_j(f) - a_j(g)|.
/// Throws TruncationError when either table stops before lag 2^{k+1} - 1.
double pseudo_metric_rho_k(const FourierCoeffs& f, const FourierCoeffs& g, int k);
double pseudo_metric_rho_k(const FunctionSpec& f, const FunctionSpec& g, int k);

struct Cover {
  std::vector<std::size_t> centers;     // member indices
  std::vector<std::size_t> assignment;  // member -> position in `centers`
  std::size_t size() const { return centers.size(); }
};

/// Pairwise rho_k distances (row-major, members x members).
std::vector<double> rho_k_matrix(std::span<const FourierCoeffs> table, int k);

/// Greedy cover with open balls {g : rho_k(center, g) < epsilon}: repeatedly
/// take the member covering the most uncovered members (lowest index on
/// ties). The size upper-bounds N(epsilon, class, rho_k).
Cover greedy_cover(std::span<const double> distances, std::size_t members, double epsilon);
Cover greedy_cover_serial(std::span<const double> distances, std::size_t members, double epsilon);

std::size_t covering_number(std::span<const FourierCoeffs> table, double epsilon, int k);

struct CoveringPoint {
  int k = 0;
  double epsilon = 0.0;
  std::size_t covering = 0;
  bool used_in_fit = false;
};

struct EntropyFit {
  std::vector<CoveringPoint> points;
  double slope = 0.0;      // d log N / d log(2^k / epsilon) over the unsaturated points
  double intercept = 0.0;  // log const
  double empirical_constant = 0.0;  // max N / (1 + (2^k/epsilon)^beta)
  std::size_t members = 0;
  double beta_candidate = 0.0;
  double alpha = 0.0;
  bool holds = false;  // slope <= beta_candidate < alpha
};

/// Regresses log N(epsilon, F, rho_k) on log(2^k / epsilon). Points with
/// N = 1 or N >= members / 2 sit on the discretization floor or ceiling and
/// are excluded from the regression (still reported).
EntropyFit entropy_condition_fit(const FunctionClass& cls, double beta_candidate, std::span<const double> eps_grid,
                                 std::span<const int> k_grid, double alpha);

}  // namespace stablespec
