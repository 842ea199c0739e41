#include "stablespec/kernels.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>

namespace stablespec::kernels {

namespace {

double lag_product_sum(std::span<const double> x, std::size_t h) {
  double acc = 0.0;
  const std::size_t n = x.size();
  for (std::size_t t = 0; t + h < n; ++t) acc += x[t] * x[t + h];
  return acc;
}

double periodogram_at(std::span<const double> x, double lambda) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    // Time index starts at 1.
    const double phase = lambda * static_cast<double>(t + 1);
    re += std::cos(phase) * x[t];
    im -= std::sin(phase) * x[t];
  }
  return (re * re + im * im) / static_cast<double>(x.size());
}

}  // namespace

namespace serial {

std::vector<double> autocov_lags(std::span<const double> x, std::size_t max_lag) {
  std::vector<double> out(max_lag + 1, 0.0);
  if (x.empty()) return out;
  const auto n = static_cast<double>(x.size());
  for (std::size_t h = 0; h <= max_lag; ++h) out[h] = lag_product_sum(x, h) / n;
  return out;
}

std::vector<double> periodogram_grid(std::span<const double> x, std::span<const double> lambdas) {
  std::vector<double> out(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) out[i] = periodogram_at(x, lambdas[i]);
  return out;
}

double weighted_autocov_sum(std::span<const double> x, std::span<const double> weights) {
  if (x.empty() || weights.size() < 2) return 0.0;
  const std::size_t last = std::min(weights.size() - 1, x.size() - 1);
  double acc = 0.0;
  for (std::size_t h = 1; h <= last; ++h) {
    if (weights[h] != 0.0) acc += weights[h] * lag_product_sum(x, h);
  }
  return acc / static_cast<double>(x.size());
}

}  // namespace serial

namespace parallel {

std::vector<double> autocov_lags(std::span<const double> x, std::size_t max_lag) {
  std::vector<double> out(max_lag + 1, 0.0);
  if (x.empty()) return out;
  const auto n = static_cast<double>(x.size());
  const auto lags = static_cast<long long>(max_lag);
#pragma omp parallel for schedule(static)
  for (long long h = 0; h <= lags; ++h) {
    out[static_cast<std::size_t>(h)] = lag_product_sum(x, static_cast<std::size_t>(h)) / n;
  }
  return out;
}

std::vector<double> periodogram_grid(std::span<const double> x, std::span<const double> lambdas) {
  std::vector<double> out(lambdas.size());
  const auto m = static_cast<long long>(lambdas.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < m; ++i) {
    out[static_cast<std::size_t>(i)] = periodogram_at(x, lambdas[static_cast<std::size_t>(i)]);
  }
  return out;
}

double weighted_autocov_sum(std::span<const double> x, std::span<const double> weights) {
  if (x.empty() || weights.size() < 2) return 0.0;
  const auto last = static_cast<long long>(std::min(weights.size() - 1, x.size() - 1));
  // Per-lag slots keep the final summation order fixed.
  std::vector<double> terms(static_cast<std::size_t>(last) + 1, 0.0);
#pragma omp parallel for schedule(static)
  for (long long h = 1; h <= last; ++h) {
    const auto lag = static_cast<std::size_t>(h);
    if (weights[lag] != 0.0) terms[lag] = weights[lag] * lag_product_sum(x, lag);
  }
  double acc = 0.0;
  for (double t : terms) acc += t;
  return acc / static_cast<double>(x.size());
}

}  // namespace parallel

namespace fft {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plan creation is not thread-safe in FFTW; execution on fresh
// fftw_malloc'd buffers is.
class PlanCache {
 public:
  PlanPair get(std::size_t size) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(size);
    if (it != plans_.end()) return it->second;
    const int n = static_cast<int>(size);
    auto* real = fftw_alloc_real(size);
    auto* spectrum = fftw_alloc_complex(size / 2 + 1);
    PlanPair plans{fftw_plan_dft_r2c_1d(n, real, spectrum, FFTW_ESTIMATE),
                   fftw_plan_dft_c2r_1d(n, spectrum, real, FFTW_ESTIMATE)};
    fftw_free(real);
    fftw_free(spectrum);
    plans_.emplace(size, plans);
    return plans;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

std::vector<double> autocov_lags(std::span<const double> x, std::size_t max_lag) {
  std::vector<double> out(max_lag + 1, 0.0);
  const std::size_t n = x.size();
  if (n == 0) return out;
  std::size_t size = 1;
  while (size < 2 * n) size <<= 1;

  const PlanPair plans = plan_cache().get(size);
  std::unique_ptr<double, FftwFree> real(fftw_alloc_real(size));
  std::unique_ptr<fftw_complex, FftwFree> spectrum(fftw_alloc_complex(size / 2 + 1));
  std::fill_n(real.get(), size, 0.0);
  std::copy(x.begin(), x.end(), real.get());

  fftw_execute_dft_r2c(plans.forward, real.get(), spectrum.get());
  for (std::size_t k = 0; k <= size / 2; ++k) {
    auto& c = spectrum.get()[k];
    c[0] = c[0] * c[0] + c[1] * c[1];
    c[1] = 0.0;
  }
  fftw_execute_dft_c2r(plans.backward, spectrum.get(), real.get());

  const double scale = 1.0 / (static_cast<double>(size) * static_cast<double>(n));
  const std::size_t last = std::min(max_lag, n - 1);
  for (std::size_t h = 0; h <= last; ++h) out[h] = real.get()[h] * scale;
  // Lag 0 exactly; it normalizes everything downstream.
  out[0] = lag_product_sum(x, 0) / static_cast<double>(n);
  return out;
}

}  // namespace fft

int thread_count() { return omp_get_max_threads(); }

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace stablespec::kernels
