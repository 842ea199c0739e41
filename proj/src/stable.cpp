#include "stablespec/stable.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stablespec/error.hpp"

namespace stablespec {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

void StableLaw::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw ParameterDomainError("alpha", "stability index must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw ParameterDomainError("sigma", "scale must be finite and nonnegative, got " + std::to_string(sigma));
  }
  if (!(beta >= -1.0 && beta <= 1.0)) {
    throw ParameterDomainError("beta", "skewness must lie in [-1, 1], got " + std::to_string(beta));
  }
  if (!std::isfinite(mu)) throw ParameterDomainError("mu", "shift must be finite");
}

double draw_stable(const StableLaw& law, Xoshiro256pp& engine) {
  // V uniform on (-pi/2, pi/2), W standard exponential.
  const double v = kPi * (engine.uniform_open() - 0.5);
  const double w = -std::log(engine.uniform_open());
  const double a = law.alpha;

  double z = 0.0;
  if (a == 1.0) {
    if (law.beta == 0.0) {
      z = std::tan(v);
    } else {
      const double shifted = kPi / 2.0 + law.beta * v;
      z = (2.0 / kPi) * (shifted * std::tan(v) -
                         law.beta * std::log((kPi / 2.0) * w * std::cos(v) / shifted));
      // Scaling a totally skewed Cauchy-type law is not a pure dilation.
      return law.sigma * z + (2.0 / kPi) * law.beta * law.sigma * std::log(law.sigma) + law.mu;
    }
  } else if (law.beta == 0.0) {
    z = std::sin(a * v) / std::pow(std::cos(v), 1.0 / a) *
        std::pow(std::cos((1.0 - a) * v) / w, (1.0 - a) / a);
  } else {
    const double t = law.beta * std::tan(kPi * a / 2.0);
    const double shift = std::atan(t) / a;
    const double scale = std::pow(1.0 + t * t, 1.0 / (2.0 * a));
    z = scale * std::sin(a * (v + shift)) / std::pow(std::cos(v), 1.0 / a) *
        std::pow(std::cos(v - a * (v + shift)) / w, (1.0 - a) / a);
  }
  return law.sigma * z + law.mu;
}

void sample_stable(const StableLaw& law, const RngStream& stream, std::span<double> out) {
  law.validate();
  auto engine = stream.engine();
  for (double& x : out) x = draw_stable(law, engine);
}

std::vector<double> sample_stable(const StableLaw& law, const RngStream& stream, std::size_t count) {
  std::vector<double> out(count);
  sample_stable(law, stream, out);
  return out;
}

std::vector<double> sample_sas(const StableLaw& law, const RngStream& stream, std::size_t count) {
  if (law.beta != 0.0) throw ParameterDomainError("beta", "symmetric sampler requires beta = 0");
  return sample_stable(law, stream, count);
}

std::vector<double> sample_positive_stable(double alpha_half, double sigma, const RngStream& stream,
                                           std::size_t count) {
  if (!(alpha_half > 0.0 && alpha_half < 1.0)) {
    throw ParameterDomainError("alpha_half",
                               "positive stable index must lie in (0, 1), got " + std::to_string(alpha_half));
  }
  if (!(sigma > 0.0)) throw ParameterDomainError("sigma", "positive stable scale must be > 0");
  return sample_stable(StableLaw::positive(alpha_half, sigma), stream, count);
}

std::complex<double> empirical_charfn(std::span<const double> sample, double t) {
  if (sample.empty()) throw DegenerateError("sample", "characteristic function of an empty sample");
  double re = 0.0;
  double im = 0.0;
  for (double x : sample) {
    re += std::cos(t * x);
    im += std::sin(t * x);
  }
  const auto n = static_cast<double>(sample.size());
  return {re / n, im / n};
}

double sas_charfn(double alpha, double sigma, double t) {
  return std::exp(-std::pow(sigma * std::abs(t), alpha));
}

}  // namespace stablespec
