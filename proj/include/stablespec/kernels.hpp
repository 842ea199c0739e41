#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference in
// `serial::` that the tests compare against and the benchmark times against
// the OpenMP version in `parallel::`.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

namespace stablespec::kernels {

namespace serial {

// gamma_n(h) for h = 0..max_lag, direct O(n * max_lag).
std::vector<double> autocov_lags(std::span<const double> x, std::size_t max_lag);

// I_n(lambda) for every lambda in the grid, direct O(n) per frequency.
std::vector<double> periodogram_grid(std::span<const double> x, std::span<const double> lambdas);

// Sum_{h} weights[h] * gamma_n(h) for h = 1..min(weights.size()-1, n-1).
double weighted_autocov_sum(std::span<const double> x, std::span<const double> weights);

}  // namespace serial

namespace parallel {

std::vector<double> autocov_lags(std::span<const double> x, std::size_t max_lag);
std::vector<double> periodogram_grid(std::span<const double> x, std::span<const double> lambdas);
double weighted_autocov_sum(std::span<const double> x, std::span<const double> weights);

}  // namespace parallel

namespace fft {

// All lags 0..max_lag through a zero-padded real FFT; O(n log n).
std::vector<double> autocov_lags(std::span<const double> x, std::size_t max_lag);

}  // namespace fft

// Number of OpenMP threads the parallel kernels will use.
int thread_count();
void set_thread_count(int threads);

/// Runs body(i) for i in [0, count). Iterations must be independent and write
/// only to slot i of their outputs; results are then identical for any
/// thread count.
/// The first exception thrown by any iteration is rethrown on the caller.
template <class Body>
void for_each_replicate(std::size_t count, Body&& body) {
  const auto n = static_cast<long long>(count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(stablespec_replicate_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <class Body>
void for_each_replicate_serial(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace stablespec::kernels
