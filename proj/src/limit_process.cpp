#include "stablespec/limit_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stablespec/error.hpp"
#include "stablespec/kernels.hpp"
#include "stablespec/stable.hpp"
#include "stablespec/timeseries.hpp"

namespace stablespec {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ParameterDomainError("alpha", "alpha must lie in (0, 2), got " + std::to_string(alpha));
  }
}

double median_abs(std::span<const double> x) {
  std::vector<double> v(x.size());
  std::transform(x.begin(), x.end(), v.begin(), [](double d) { return std::abs(d); });
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

void LimitScales::validate() const {
  if (!(sigma1 > 0.0) || !std::isfinite(sigma1)) throw ParameterDomainError("sigma1", "sigma1 must be > 0");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ParameterDomainError("sigma2", "sigma2 must be > 0");
}

std::string to_string(LimitScales::Provenance p) {
  return p == LimitScales::Provenance::kCalibrated ? "calibrated" : "configured";
}

LimitDraws sample_limit_vector(double alpha, const LimitScales& scales, std::size_t m, const RngStream& stream,
                               std::size_t count) {
  check_alpha(alpha);
  scales.validate();
  if (m < 1) throw ParameterDomainError("m", "need at least one lag component");
  LimitDraws out;
  out.m = m;
  out.count = count;
  out.columns.resize(m + 1);
  kernels::for_each_replicate(m + 1, [&](std::size_t h) {
    out.columns[h] = (h == 0) ? sample_positive_stable(alpha / 2.0, scales.sigma1, stream.child(0), count)
                              : sample_stable(StableLaw::symmetric(alpha, scales.sigma2), stream.child(h), count);
  });
  return out;
}

double ell_alpha_tail_estimate(const FourierCoeffs& a, double alpha, std::size_t K) {
  const std::size_t full = a.truncation();
  K = std::min(K, full);
  // Exact mass of coefficients stored beyond K.
  double stored = 0.0;
  for (std::size_t k = K + 1; k <= full; ++k) stored += std::pow(std::abs(a[k]), alpha);

  std::vector<double> blocks;
  std::size_t end = 0;  // last index covered by a complete block
  for (std::size_t lo = 1; 2 * lo - 1 <= full; lo *= 2) {
    double b = 0.0;
    for (std::size_t k = lo; k <= 2 * lo - 1; ++k) b += std::pow(std::abs(a[k]), alpha);
    blocks.push_back(b);
    end = 2 * lo - 1;
  }
  if (blocks.size() < 2) return stored;
  const double last = blocks.back();
  const double prev = blocks[blocks.size() - 2];
  if (last == 0.0) return stored;
  if (!(prev > 0.0) || last >= prev) return std::numeric_limits<double>::infinity();
  // Geometric continuation past the last complete block, less what is already stored there.
  const double q = last / prev;
  double past_end = 0.0;
  for (std::size_t k = std::max(end, K) + 1; k <= full; ++k) past_end += std::pow(std::abs(a[k]), alpha);
  return stored + std::max(0.0, last * q / (1.0 - q) - past_end);
}

LimitSample sample_Y_of_a(const FourierCoeffs& a, double alpha, const LimitScales& scales, std::size_t K,
                          const RngStream& stream, std::size_t count) {
  check_alpha(alpha);
  scales.validate();
  K = std::min(K, a.truncation());
  LimitSample out;
  out.truncation = K;
  out.values.assign(count, 0.0);
  for (std::size_t k = 1; k <= K; ++k) out.ell_alpha_mass += std::pow(std::abs(a[k]), alpha);
  out.tail_mass = ell_alpha_tail_estimate(a, alpha, K);
  out.degenerate = out.ell_alpha_mass == 0.0;
  if (out.degenerate) return out;

  // Rows are accumulated in lag order so results do not depend on threading.
  const StableLaw law = StableLaw::symmetric(alpha, scales.sigma2);
  std::vector<double> column(count);
  for (std::size_t k = 1; k <= K; ++k) {
    if (a[k] == 0.0) continue;
    sample_stable(law, stream.child(k), column);
    const double w = a[k];
    for (std::size_t i = 0; i < count; ++i) out.values[i] += w * column[i];
  }
  return out;
}

LimitSample sample_Y_tilde_of_a(const FourierCoeffs& a, double alpha, const LimitScales& scales, std::size_t K,
                                const RngStream& stream, std::size_t count) {
  auto out = sample_Y_of_a(a, alpha, scales, K, stream, count);
  if (out.degenerate) return out;
  const auto y0 = sample_positive_stable(alpha / 2.0, scales.sigma1, stream.child(0), count);
  for (std::size_t i = 0; i < count; ++i) out.values[i] /= y0[i];
  return out;
}

double charfn_scale_estimate(std::span<const double> sample, double alpha, std::span<const double> t_grid) {
  if (sample.empty()) throw DegenerateError("sample", "scale estimate of an empty sample");
  double acc = 0.0;
  std::size_t used = 0;
  for (double t : t_grid) {
    const double modulus = std::abs(empirical_charfn(sample, t));
    if (!(modulus > 0.0 && modulus < 1.0)) continue;
    // -log|phi(t)| = (sigma t)^alpha.
    acc += (std::log(-std::log(modulus)) - alpha * std::log(t)) / alpha;
    ++used;
  }
  if (used == 0) throw DegenerateError("t_grid", "no usable frequency for the characteristic-function fit");
  return std::exp(acc / static_cast<double>(used));
}

LimitScales calibrate_scales(double alpha, const RngStream& stream, const CalibrationOptions& options) {
  check_alpha(alpha);
  if (options.reference_n < 2 || options.replicates < 2) {
    throw ParameterDomainError("calibration", "calibration needs reference_n >= 2 and replicates >= 2");
  }
  const double n = static_cast<double>(options.reference_n);
  std::vector<double> s0(options.replicates);
  std::vector<double> s1(options.replicates);
  kernels::for_each_replicate(options.replicates, [&](std::size_t r) {
    const auto path = simulate_iid(options.reference_n, alpha, stream.child(r));
    s0[r] = n * sample_autocov(path, 0) / std::pow(n, 2.0 / alpha);
    s1[r] = n * sample_autocov(path, 1) / std::pow(n * std::log(n), 1.0 / alpha);
  });
  auto fit = [](std::span<const double> sample, double index) {
    const double q = median_abs(sample);
    const double grid[] = {0.25 / q, 0.5 / q, 1.0 / q, 2.0 / q};
    return charfn_scale_estimate(sample, index, grid);
  };
  LimitScales out;
  out.sigma1 = fit(s0, alpha / 2.0);
  out.sigma2 = fit(s1, alpha);
  out.provenance = LimitScales::Provenance::kCalibrated;
  return out;
}

}  // namespace stablespec
