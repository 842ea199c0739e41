#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "stablespec/rng.hpp"

namespace stablespec {

/// Stable law S_alpha(sigma, beta, mu) in the characteristic-function
/// parameterization: for alpha != 1,
///   log E e^{itY} = -sigma^alpha |t|^alpha (1 - i beta sign(t) tan(pi alpha / 2)) + i mu t,
/// and for alpha == 1 the tangent term becomes (2/pi) sign(t) log|t|.
/// The symmetric case is exp(-sigma^alpha |t|^alpha); alpha = 2 is Gaussian
/// with variance 2 sigma^2.
struct StableLaw {
  double alpha = 2.0;
  double sigma = 1.0;
  double beta = 0.0;
  double mu = 0.0;

  static StableLaw symmetric(double alpha, double sigma = 1.0) { return {alpha, sigma, 0.0, 0.0}; }
  static StableLaw positive(double alpha, double sigma = 1.0) { return {alpha, sigma, 1.0, 0.0}; }

  // Throws ParameterDomainError on alpha outside (0,2], sigma < 0 or |beta| > 1.
  void validate() const;
};

/// Chambers-Mallows-Stuck draw from S_alpha(sigma, beta, mu). Uses two
/// uniforms from the engine per draw.
double draw_stable(const StableLaw& law, Xoshiro256pp& engine);

/// Fills `out` with i.i.d. draws from `law` using the stream's engine.
void sample_stable(const StableLaw& law, const RngStream& stream, std::span<double> out);
std::vector<double> sample_stable(const StableLaw& law, const RngStream& stream, std::size_t count);

// Symmetric draws; requires beta == 0 in `law`.
std::vector<double> sample_sas(const StableLaw& law, const RngStream& stream, std::size_t count);

// S_{alpha_half}(sigma, 1, 0) with alpha_half in (0,1): strictly positive support.
std::vector<double> sample_positive_stable(double alpha_half, double sigma, const RngStream& stream,
                                           std::size_t count);

/// (1/N) sum_j exp(i t x_j).
std::complex<double> empirical_charfn(std::span<const double> sample, double t);

/// exp(-sigma^alpha |t|^alpha) for the symmetric law.
double sas_charfn(double alpha, double sigma, double t);

}  // namespace stablespec
