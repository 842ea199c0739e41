#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stablespec/fourier.hpp"
#include "stablespec/rng.hpp"

namespace stablespec {

/// Scales of the limit variables: Y_0 ~ S_{alpha/2}(sigma1, 1, 0) and
/// Y_h ~ S_alpha(sigma2, 0, 0) for h >= 1.
struct LimitScales {
  enum class Provenance { kConfigured, kCalibrated };
  double sigma1 = 1.0;
  double sigma2 = 1.0;
  Provenance provenance = Provenance::kConfigured;

  void validate() const;
};

std::string to_string(LimitScales::Provenance p);

/// count draws of (Y_0, Y_1, ..., Y_m). Component h is generated from
/// stream.child(h), so column h depends only on (stream, h).
struct LimitDraws {
  std::size_t m = 0;
  std::size_t count = 0;
  std::vector<std::vector<double>> columns;  // columns[h][draw]
};

LimitDraws sample_limit_vector(double alpha, const LimitScales& scales, std::size_t m, const RngStream& stream,
                               std::size_t count);

struct LimitSample {
  std::vector<double> values;
  std::size_t truncation = 0;
  double ell_alpha_mass = 0.0;  // sum_{k<=K} |a_k|^alpha
  double tail_mass = 0.0;       // estimate of sum_{k>K} |a_k|^alpha
  bool degenerate = false;      // a == 0
};

/// Draws of Y(a) = sum_{k=1}^K a_k Y_k, with Y_k from stream.child(k).
LimitSample sample_Y_of_a(const FourierCoeffs& a, double alpha, const LimitScales& scales, std::size_t K,
                          const RngStream& stream, std::size_t count);

/// Draws of Y(a) / Y_0, with Y_0 from stream.child(0).
LimitSample sample_Y_tilde_of_a(const FourierCoeffs& a, double alpha, const LimitScales& scales, std::size_t K,
                                const RngStream& stream, std::size_t count);

/// Estimate of sum_{k>K} |a_k|^alpha: the stored coefficients beyond K
/// exactly, plus a geometric continuation of the last two complete dyadic
/// blocks past the end of `a` (infinity when the blocks do not shrink).
double ell_alpha_tail_estimate(const FourierCoeffs& a, double alpha, std::size_t K);

/// Scale of a symmetric stable sample with known index, fitted by
/// regressing log(-log |phi_hat(t)|) - alpha log t on the t grid.
double charfn_scale_estimate(std::span<const double> sample, double alpha, std::span<const double> t_grid);

struct CalibrationOptions {
  std::size_t reference_n = std::size_t{1} << 20;
  std::size_t replicates = 200;
};

/// Fits sigma1 from n gamma_n(0) / n^{2/alpha} and sigma2 from
/// n gamma_n(1) / (n log n)^{1/alpha} on simulated i.i.d. paths.
LimitScales calibrate_scales(double alpha, const RngStream& stream, const CalibrationOptions& options = {});

}  // namespace stablespec
