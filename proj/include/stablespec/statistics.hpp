#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stablespec/rng.hpp"

namespace stablespec {

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_distance(std::span<const double> a, std::span<const double> b);

/// Hill estimator of the tail index of |X| from the top k = floor(top_fraction * N)
/// order statistics: 1 / mean_{i<=k} log(X_(i) / X_(k+1)).
/// Requires 0 < top_fraction <= 0.1 and k >= 1; throws DegenerateError when the
/// log-spacings are not positive.
double hill_tail_index(std::span<const double> sample, double top_fraction);

/// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::span<const double> sample, double p);
double median(std::span<const double> sample);
double iqr(std::span<const double> sample);

/// (x - median) / IQR; a zero IQR leaves the centred sample unscaled.
std::vector<double> standardize(std::span<const double> sample);

/// Bootstrap standard error of `stat` over `resamples` resamples drawn
/// from `stream`.
double bootstrap_se(std::span<const double> sample, const std::function<double(std::span<const double>)>& stat,
                    std::size_t resamples, const RngStream& stream);

/// Bootstrap standard error of a two-sample statistic; both samples resampled.
double bootstrap_se_two_sample(std::span<const double> a, std::span<const double> b,
                               const std::function<double(std::span<const double>, std::span<const double>)>& stat,
                               std::size_t resamples, const RngStream& stream);

/// Pearson correlation of sign(a) and sign(b).
double sign_correlation(std::span<const double> a, std::span<const double> b);

struct TrendCheck {
  bool holds = true;
  std::size_t first_violation = 0;  // index i with values[i+1] beyond the band; valid when !holds
};

/// values[i+1] <= values[i] + 2 max(se[i], se[i+1]) for every i.
TrendCheck nonincreasing_within_band(std::span<const double> values, std::span<const double> se);
/// values[i+1] >= values[i] - 2 max(se[i], se[i+1]) for every i.
TrendCheck nondecreasing_within_band(std::span<const double> values, std::span<const double> se);

}  // namespace stablespec
