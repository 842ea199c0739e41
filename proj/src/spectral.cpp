#include "stablespec/spectral.hpp"

#include <cmath>
#include <numbers>

#include "stablespec/error.hpp"
#include "stablespec/kernels.hpp"

namespace stablespec {

namespace {

constexpr double kPi = std::numbers::pi;

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= kPi)) {
    throw ParameterDomainError("lambda", "frequency must lie in [0, pi], got " + std::to_string(lambda));
  }
}

void check_alignment(const SamplePath& process, const SamplePath& innovations, const LinearFilter& filter) {
  const auto& p = process.provenance;
  const auto& e = innovations.provenance;
  if (p.origin != PathOrigin::kLinear || !p.filter || !(*p.filter == filter)) {
    throw AlignmentError("process path was not generated by simulate_linear with this filter");
  }
  if (e.origin != PathOrigin::kIid || !(e.stream == p.stream) || innovations.size() != process.size() ||
      innovations.alpha != process.alpha) {
    throw AlignmentError("innovation path is not the aligned driving segment of the process");
  }
}

}  // namespace

double periodogram(const SamplePath& path, double lambda) {
  check_lambda(lambda);
  path.validate();
  const double grid[] = {lambda};
  return kernels::serial::periodogram_grid(path.values, grid)[0];
}

double periodogram_via_autocov(const SamplePath& path, double lambda) {
  check_lambda(lambda);
  path.validate();
  const std::size_t n = path.size();
  const auto gamma = kernels::serial::autocov_lags(path.values, n - 1);
  double acc = 0.0;
  for (std::size_t h = 1; h < n; ++h) acc += std::cos(lambda * static_cast<double>(h)) * gamma[h];
  return gamma[0] + 2.0 * acc;
}

std::vector<SpectralEvaluation> periodogram_grid(const SamplePath& path, std::span<const double> lambdas) {
  path.validate();
  for (double l : lambdas) check_lambda(l);
  const auto values = kernels::parallel::periodogram_grid(path.values, lambdas);
  std::vector<SpectralEvaluation> out(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) out[i] = {lambdas[i], values[i]};
  return out;
}

std::vector<double> frequency_grid(std::size_t m) {
  if (m < 2) throw ParameterDomainError("m", "frequency grid needs at least two points");
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = kPi * static_cast<double>(j) / static_cast<double>(m - 1);
  out.back() = kPi;
  return out;
}

double integrated_periodogram(std::span<const double> x, const FourierCoeffs& a) {
  const std::size_t n = x.size();
  if (n == 0) return 0.0;
  const std::size_t lags = std::min(n - 1, a.truncation());
  const auto gamma = autocov_lags(x, lags);
  double acc = 0.0;
  for (std::size_t h = 1; h <= lags; ++h) acc += a.a[h] * gamma[h];
  return gamma[0] * a[0] + 2.0 * acc;
}

double integrated_periodogram(const SamplePath& path, const FourierCoeffs& a) {
  path.validate();
  return integrated_periodogram(path.values, a);
}

double self_normalized_integrated_periodogram(const SamplePath& path, const FourierCoeffs& a) {
  path.validate();
  const double g0 = sample_autocov(path, 0);
  if (!(g0 > 0.0)) throw DegenerateError("path", "self-normalization of an all-zero path");
  return integrated_periodogram(path, a) / g0;
}

std::complex<double> transfer_function(const LinearFilter& filter, double lambda) {
  std::complex<double> acc{0.0, 0.0};
  for (int j = filter.min_lag(); j <= filter.max_lag(); ++j) {
    acc += filter.coeff(j) * std::polar(1.0, -lambda * j);
  }
  return acc;
}

double power_transfer(const LinearFilter& filter, double lambda) { return std::norm(transfer_function(filter, lambda)); }

double remainder(const SamplePath& process, const SamplePath& innovations, const LinearFilter& filter,
                 double lambda) {
  check_alignment(process, innovations, filter);
  return periodogram(process, lambda) - periodogram(innovations, lambda) * power_transfer(filter, lambda);
}

std::vector<double> integrated_remainder(const SamplePath& process, const SamplePath& innovations,
                                         const LinearFilter& filter, std::span<const FourierCoeffs> coeffs) {
  check_alignment(process, innovations, filter);
  const std::size_t n = process.size();
  const std::size_t lags = n - 1;
  const auto gx = autocov_lags(process.values, lags);
  const auto ge = autocov_lags(innovations.values, lags);
  std::vector<double> out;
  out.reserve(coeffs.size());
  for (const auto& a : coeffs) {
    const auto b = modulate_by_filter(a, filter, lags);
    double jx = 0.0;
    double je = 0.0;
    for (std::size_t h = 1; h <= lags; ++h) {
      jx += a[h] * gx[h];
      je += b.a[h] * ge[h];
    }
    out.push_back(gx[0] * a[0] + 2.0 * jx - (ge[0] * b.a[0] + 2.0 * je));
  }
  return out;
}

}  // namespace stablespec
