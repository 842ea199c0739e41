#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stablespec/timeseries.hpp"

namespace stablespec {

// Index functions on [0, pi].

struct ConstantFn {
  double c = 1.0;
};

// I_{[0, x]}, 0 < x <= pi.
struct IndicatorFn {
  double x = 1.0;
};

// cos(k lambda).
struct CosineFn {
  int k = 1;
};

// (s^2 / 2pi) |psi(e^{-i lambda})|^2 for a finite filter.
struct ArmaDensityFn {
  LinearFilter filter = LinearFilter::identity();
  double innovation_scale = 1.0;
};

/// Member g_theta of a parametric family that is Hoelder continuous in theta
/// under the sup norm. The built-in "ramp" family is 1 on [0, theta],
/// falls linearly to 0 on [theta, theta + width] and is 0 afterwards, so
/// sup |g_s - g_t| <= |s - t| / width (exponent 1).
struct HolderMemberFn {
  std::string family_id = "ramp";
  double width = 0.01;
  double theta = 1.0;
};

// Piecewise-linear interpolation of (grid, values); flat beyond the grid ends.
struct TabulatedFn {
  std::vector<double> grid;
  std::vector<double> values;
};

class FunctionSpec {
 public:
  using Variant = std::variant<ConstantFn, IndicatorFn, CosineFn, ArmaDensityFn, HolderMemberFn, TabulatedFn>;

  FunctionSpec(Variant v);  // NOLINT(google-explicit-constructor): variants convert implicitly

  static FunctionSpec constant(double c) { return FunctionSpec(ConstantFn{c}); }
  static FunctionSpec indicator(double x) { return FunctionSpec(IndicatorFn{x}); }
  static FunctionSpec cosine(int k) { return FunctionSpec(CosineFn{k}); }

  double operator()(double lambda) const;
  // Points in (0, pi) where f or a derivative jumps.
  std::vector<double> breakpoints() const;
  // Short label such as "indicator(x=1)".
  std::string describe() const;
  const Variant& variant() const { return v_; }

 private:
  Variant v_;
};

/// a_h = int_0^pi cos(lambda h) f(lambda) d lambda for h = 0..K.
struct FourierCoeffs {
  std::vector<double> a;
  // Closed-form descriptor ("indicator", "geometric", ...), empty when computed by quadrature.
  std::string analytic_tag;

  std::size_t truncation() const { return a.empty() ? 0 : a.size() - 1; }
  double operator[](std::size_t h) const { return h < a.size() ? a[h] : 0.0; }

  // Raw sequence a_1, a_2, ...; a_0 is set to 0.
  static FourierCoeffs raw(std::span<const double> from_one, std::string tag = "raw");
  // a_k = r^k for k = 1..K.
  static FourierCoeffs geometric(double r, std::size_t K);
  // a_k = k^-p for k = 1..K.
  static FourierCoeffs power(double p, std::size_t K);
  // a_k = c * I{k == index}.
  static FourierCoeffs unit(std::size_t index, std::size_t K, double c = 1.0);
};

enum class CoeffMethod { kAuto, kQuadrature };

/// Analytic for constant, indicator, cosine, ARMA (finite filter) and ramp
/// members; adaptive quadrature (absolute tolerance 1e-10 per coefficient)
/// for tabulated functions or when kQuadrature is forced.
FourierCoeffs fourier_coeffs(const FunctionSpec& f, std::size_t K, CoeffMethod method = CoeffMethod::kAuto);

/// Fourier coefficients of f(lambda) |psi(e^{-i lambda})|^2 from those of f:
/// b_h = sum_m c_m a_{|h+m|}, with c the filter autocovariance. Needs a
/// through lag K + filter span; missing lags count as zero.
FourierCoeffs modulate_by_filter(const FourierCoeffs& a, const LinearFilter& filter, std::size_t K);

/// ||f||_2 on [0, pi] by quadrature.
double l2_norm(const FunctionSpec& f);

}  // namespace stablespec
