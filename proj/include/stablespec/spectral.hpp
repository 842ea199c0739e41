#pragma once

#include <complex>
#include <span>
#include <vector>

#include "stablespec/fourier.hpp"
#include "stablespec/timeseries.hpp"

namespace stablespec {

struct SpectralEvaluation {
  double lambda = 0.0;
  double value = 0.0;
};

/// I_n(lambda) = |n^{-1/2} sum_{t=1}^n e^{-i lambda t} X_t|^2, lambda in [0, pi].
double periodogram(const SamplePath& path, double lambda);

/// gamma_n(0) + 2 sum_{h=1}^{n-1} cos(lambda h) gamma_n(h).
double periodogram_via_autocov(const SamplePath& path, double lambda);

std::vector<SpectralEvaluation> periodogram_grid(const SamplePath& path, std::span<const double> lambdas);

// Fourier grid lambda_j = pi j / (m - 1), j = 0..m-1.
std::vector<double> frequency_grid(std::size_t m);

/// J_n(f) = gamma_n(0) a_0 + 2 sum_{h=1}^{n-1} a_h gamma_n(h). Coefficients
/// beyond the truncation of `a` count as zero.
double integrated_periodogram(const SamplePath& path, const FourierCoeffs& a);
double integrated_periodogram(std::span<const double> x, const FourierCoeffs& a);

/// J_n(f) / gamma_n(0). Throws DegenerateError on an all-zero path.
double self_normalized_integrated_periodogram(const SamplePath& path, const FourierCoeffs& a);

/// psi(e^{-i lambda}) = sum_j psi_j e^{-i lambda j}.
std::complex<double> transfer_function(const LinearFilter& filter, double lambda);
double power_transfer(const LinearFilter& filter, double lambda);

/// R_n(lambda) = I_{n,X}(lambda) - I_{n,eps}(lambda) |psi(e^{-i lambda})|^2.
/// Throws AlignmentError unless `process` came from simulate_linear with
/// `filter` and `innovations` is the matching aligned innovation segment.
double remainder(const SamplePath& process, const SamplePath& innovations, const LinearFilter& filter,
                 double lambda);

/// int_0^pi f(lambda) R_n(lambda) d lambda for each member, via coefficients:
/// J_{n,X}(f) - J_{n,eps}(f |psi|^2). `coeffs` must reach lag n - 1 + filter span.
std::vector<double> integrated_remainder(const SamplePath& process, const SamplePath& innovations,
                                         const LinearFilter& filter, std::span<const FourierCoeffs> coeffs);

}  // namespace stablespec
