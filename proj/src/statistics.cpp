#include "stablespec/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "stablespec/error.hpp"

namespace stablespec {

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DegenerateError("sample", "KS distance needs nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double hill_tail_index(std::span<const double> sample, double top_fraction) {
  if (!(top_fraction > 0.0 && top_fraction <= 0.1)) {
    throw ParameterDomainError("top_fraction", "Hill top fraction must lie in (0, 0.1]");
  }
  const auto k = static_cast<std::size_t>(std::floor(top_fraction * static_cast<double>(sample.size())));
  if (k < 1 || k >= sample.size()) throw DegenerateError("sample", "Hill estimator needs at least one top order statistic");
  std::vector<double> v(sample.size());
  std::transform(sample.begin(), sample.end(), v.begin(), [](double d) { return std::abs(d); });
  std::partial_sort(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k + 1), v.end(), std::greater<>());
  const double threshold = v[k];
  if (!(threshold > 0.0)) throw DegenerateError("sample", "Hill threshold order statistic is not positive");
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(v[i] / threshold);
  if (!(acc > 0.0)) throw DegenerateError("sample", "Hill log-spacings are not positive (constant sample?)");
  return static_cast<double>(k) / acc;
}

double quantile(std::span<const double> sample, double p) {
  if (sample.empty()) throw DegenerateError("sample", "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterDomainError("p", "quantile level must lie in [0, 1]");
  std::vector<double> v(sample.begin(), sample.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
  const double a = v[lo];
  if (frac == 0.0 || lo + 1 >= v.size()) return a;
  const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo + 1), v.end());
  return a + frac * (b - a);
}

double median(std::span<const double> sample) { return quantile(sample, 0.5); }

double iqr(std::span<const double> sample) { return quantile(sample, 0.75) - quantile(sample, 0.25); }

std::vector<double> standardize(std::span<const double> sample) {
  const double m = median(sample);
  const double s = iqr(sample);
  std::vector<double> out(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) out[i] = s > 0.0 ? (sample[i] - m) / s : sample[i] - m;
  return out;
}

namespace {

std::vector<double> resample(std::span<const double> x, Xoshiro256pp& engine) {
  std::vector<double> out(x.size());
  const auto n = static_cast<double>(x.size());
  for (double& v : out) {
    auto idx = static_cast<std::size_t>(engine.uniform_open() * n);
    v = x[std::min(idx, x.size() - 1)];
  }
  return out;
}

double stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

double bootstrap_se(std::span<const double> sample, const std::function<double(std::span<const double>)>& stat,
                    std::size_t resamples, const RngStream& stream) {
  if (sample.empty()) throw DegenerateError("sample", "bootstrap of an empty sample");
  auto engine = stream.engine();
  std::vector<double> stats(resamples);
  for (auto& s : stats) s = stat(resample(sample, engine));
  return stddev(stats);
}

double bootstrap_se_two_sample(std::span<const double> a, std::span<const double> b,
                               const std::function<double(std::span<const double>, std::span<const double>)>& stat,
                               std::size_t resamples, const RngStream& stream) {
  if (a.empty() || b.empty()) throw DegenerateError("sample", "bootstrap of an empty sample");
  auto engine = stream.engine();
  std::vector<double> stats(resamples);
  for (auto& s : stats) {
    const auto ra = resample(a, engine);
    const auto rb = resample(b, engine);
    s = stat(ra, rb);
  }
  return stddev(stats);
}

double sign_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw ParameterDomainError("sample", "sign correlation needs equal nonempty samples");
  auto sgn = [](double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); };
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += sgn(a[i]);
    mb += sgn(b[i]);
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = sgn(a[i]) - ma;
    const double db = sgn(b[i]) - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

TrendCheck nonincreasing_within_band(std::span<const double> values, std::span<const double> se) {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double band = 2.0 * std::max(se[i], se[i + 1]);
    if (values[i + 1] > values[i] + band) return {false, i};
  }
  return {};
}

TrendCheck nondecreasing_within_band(std::span<const double> values, std::span<const double> se) {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double band = 2.0 * std::max(se[i], se[i + 1]);
    if (values[i + 1] < values[i] - band) return {false, i};
  }
  return {};
}

}  // namespace stablespec
