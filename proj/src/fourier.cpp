#include "stablespec/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stablespec/error.hpp"
#include "stablespec/quadrature.hpp"

namespace stablespec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCoeffTolerance = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// c_h = sum_j psi_j psi_{j+h}, h >= 0.
std::vector<double> filter_autocov(const LinearFilter& filter) {
  const auto c = filter.coeffs();
  std::vector<double> out(c.size(), 0.0);
  for (std::size_t h = 0; h < c.size(); ++h) {
    for (std::size_t j = 0; j + h < c.size(); ++j) out[h] += c[j] * c[j + h];
  }
  return out;
}

void validate(const FunctionSpec::Variant& v) {
  std::visit(Overloaded{
                 [](const ConstantFn& f) {
                   if (!std::isfinite(f.c)) throw ParameterDomainError("c", "constant must be finite");
                 },
                 [](const IndicatorFn& f) {
                   if (!(f.x > 0.0 && f.x <= kPi)) {
                     throw ParameterDomainError("x", "indicator endpoint must lie in (0, pi]");
                   }
                 },
                 [](const CosineFn& f) {
                   if (f.k < 0) throw ParameterDomainError("k", "cosine frequency must be >= 0");
                 },
                 [](const ArmaDensityFn& f) {
                   if (!(f.innovation_scale > 0.0)) {
                     throw ParameterDomainError("innovation_scale", "innovation scale must be > 0");
                   }
                 },
                 [](const HolderMemberFn& f) {
                   if (f.family_id != "ramp") {
                     throw UnresolvedReferenceError("family_id", "unknown Hoelder family '" + f.family_id + "'");
                   }
                   if (!(f.width > 0.0) || !(f.theta >= 0.0) || !(f.theta + f.width <= kPi)) {
                     throw ParameterDomainError("theta", "ramp member needs width > 0 and 0 <= theta, theta + width <= pi");
                   }
                 },
                 [](const TabulatedFn& f) {
                   if (f.grid.size() < 2 || f.grid.size() != f.values.size()) {
                     throw ParameterDomainError("grid", "tabulated function needs >= 2 matching grid/value points");
                   }
                   for (std::size_t i = 0; i < f.grid.size(); ++i) {
                     if (f.grid[i] < 0.0 || f.grid[i] > kPi || (i > 0 && !(f.grid[i] > f.grid[i - 1]))) {
                       throw ParameterDomainError("grid", "tabulated grid must be strictly increasing within [0, pi]");
                     }
                     if (!std::isfinite(f.values[i])) throw ParameterDomainError("values", "tabulated values must be finite");
                   }
                 },
             },
             v);
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

FunctionSpec::FunctionSpec(Variant v) : v_(std::move(v)) { validate(v_); }

double FunctionSpec::operator()(double lambda) const {
  return std::visit(
      Overloaded{
          [](const ConstantFn& f) { return f.c; },
          [lambda](const IndicatorFn& f) { return lambda <= f.x ? 1.0 : 0.0; },
          [lambda](const CosineFn& f) { return std::cos(lambda * f.k); },
          [lambda](const ArmaDensityFn& f) {
            double re = 0.0;
            double im = 0.0;
            for (int j = f.filter.min_lag(); j <= f.filter.max_lag(); ++j) {
              re += f.filter.coeff(j) * std::cos(lambda * j);
              im -= f.filter.coeff(j) * std::sin(lambda * j);
            }
            return f.innovation_scale * f.innovation_scale / (2.0 * kPi) * (re * re + im * im);
          },
          [lambda](const HolderMemberFn& f) {
            if (lambda <= f.theta) return 1.0;
            if (lambda >= f.theta + f.width) return 0.0;
            return 1.0 - (lambda - f.theta) / f.width;
          },
          [lambda](const TabulatedFn& f) {
            if (lambda <= f.grid.front()) return f.values.front();
            if (lambda >= f.grid.back()) return f.values.back();
            const auto it = std::upper_bound(f.grid.begin(), f.grid.end(), lambda);
            const auto i = static_cast<std::size_t>(it - f.grid.begin());
            const double w = (lambda - f.grid[i - 1]) / (f.grid[i] - f.grid[i - 1]);
            return f.values[i - 1] + w * (f.values[i] - f.values[i - 1]);
          },
      },
      v_);
}

std::vector<double> FunctionSpec::breakpoints() const {
  return std::visit(Overloaded{
                        [](const IndicatorFn& f) { return std::vector<double>{f.x}; },
                        [](const HolderMemberFn& f) { return std::vector<double>{f.theta, f.theta + f.width}; },
                        [](const TabulatedFn& f) { return f.grid; },
                        [](const auto&) { return std::vector<double>{}; },
                    },
                    v_);
}

std::string FunctionSpec::describe() const {
  return std::visit(Overloaded{
                        [](const ConstantFn& f) { return "constant(c=" + fmt(f.c) + ")"; },
                        [](const IndicatorFn& f) { return "indicator(x=" + fmt(f.x) + ")"; },
                        [](const CosineFn& f) { return "cosine(k=" + std::to_string(f.k) + ")"; },
                        [](const ArmaDensityFn& f) {
                          return "arma_spectral_density(filter=" + f.filter.describe() +
                                 ",scale=" + fmt(f.innovation_scale) + ")";
                        },
                        [](const HolderMemberFn& f) {
                          return "holder_member(family=" + f.family_id + ",width=" + fmt(f.width) +
                                 ",theta=" + fmt(f.theta) + ")";
                        },
                        [](const TabulatedFn& f) {
                          return "tabulated(points=" + std::to_string(f.grid.size()) + ")";
                        },
                    },
                    v_);
}

FourierCoeffs FourierCoeffs::raw(std::span<const double> from_one, std::string tag) {
  FourierCoeffs out;
  out.a.assign(from_one.size() + 1, 0.0);
  std::copy(from_one.begin(), from_one.end(), out.a.begin() + 1);
  out.analytic_tag = std::move(tag);
  return out;
}

FourierCoeffs FourierCoeffs::geometric(double r, std::size_t K) {
  FourierCoeffs out;
  out.a.assign(K + 1, 0.0);
  double v = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    v *= r;
    out.a[k] = v;
  }
  out.analytic_tag = "geometric";
  return out;
}

FourierCoeffs FourierCoeffs::power(double p, std::size_t K) {
  FourierCoeffs out;
  out.a.assign(K + 1, 0.0);
  for (std::size_t k = 1; k <= K; ++k) out.a[k] = std::pow(static_cast<double>(k), -p);
  out.analytic_tag = "power";
  return out;
}

FourierCoeffs FourierCoeffs::unit(std::size_t index, std::size_t K, double c) {
  FourierCoeffs out;
  out.a.assign(std::max(K, index) + 1, 0.0);
  out.a[index] = c;
  out.analytic_tag = "unit";
  return out;
}

FourierCoeffs fourier_coeffs(const FunctionSpec& f, std::size_t K, CoeffMethod method) {
  if (K < 1) throw ParameterDomainError("K", "coefficient truncation must be >= 1");
  FourierCoeffs out;
  out.a.assign(K + 1, 0.0);
  const bool tabulated = std::holds_alternative<TabulatedFn>(f.variant());

  if (method == CoeffMethod::kQuadrature || tabulated) {
    const auto breaks = f.breakpoints();
    for (std::size_t h = 0; h <= K; ++h) {
      const double freq = static_cast<double>(h);
      // About two panels per oscillation over the longest smooth segment.
      const int panels = 1 + static_cast<int>(freq / (tabulated ? std::max<double>(breaks.size(), 1.0) : 1.0));
      const auto r = integrate([&](double l) { return std::cos(freq * l) * f(l); }, 0.0, kPi, kCoeffTolerance,
                               breaks, panels);
      out.a[h] = r.value;
    }
    return out;
  }

  std::visit(Overloaded{
                 [&](const ConstantFn& g) {
                   out.a[0] = g.c * kPi;
                   out.analytic_tag = "constant";
                 },
                 [&](const IndicatorFn& g) {
                   out.a[0] = g.x;
                   for (std::size_t h = 1; h <= K; ++h) {
                     const double d = static_cast<double>(h);
                     out.a[h] = std::sin(g.x * d) / d;
                   }
                   out.analytic_tag = "indicator";
                 },
                 [&](const CosineFn& g) {
                   const auto k = static_cast<std::size_t>(g.k);
                   if (k <= K) out.a[k] = (k == 0) ? kPi : kPi / 2.0;
                   out.analytic_tag = "cosine";
                 },
                 [&](const ArmaDensityFn& g) {
                   const auto c = filter_autocov(g.filter);
                   const double s2 = g.innovation_scale * g.innovation_scale;
                   for (std::size_t h = 0; h < c.size() && h <= K; ++h) out.a[h] = s2 * c[h] / 2.0;
                   out.analytic_tag = "arma";
                 },
                 [&](const HolderMemberFn& g) {
                   out.a[0] = g.theta + g.width / 2.0;
                   for (std::size_t h = 1; h <= K; ++h) {
                     const double d = static_cast<double>(h);
                     out.a[h] = (std::cos(d * g.theta) - std::cos(d * (g.theta + g.width))) / (d * d * g.width);
                   }
                   out.analytic_tag = "ramp";
                 },
                 [](const TabulatedFn&) {},
             },
             f.variant());
  return out;
}

FourierCoeffs modulate_by_filter(const FourierCoeffs& a, const LinearFilter& filter, std::size_t K) {
  const auto c = filter_autocov(filter);
  FourierCoeffs out;
  out.a.assign(K + 1, 0.0);
  const long span = static_cast<long>(c.size()) - 1;
  for (std::size_t h = 0; h <= K; ++h) {
    double acc = 0.0;
    for (long m = -span; m <= span; ++m) {
      const long idx = std::labs(static_cast<long>(h) + m);
      acc += c[static_cast<std::size_t>(std::labs(m))] * a[static_cast<std::size_t>(idx)];
    }
    out.a[h] = acc;
  }
  out.analytic_tag = a.analytic_tag.empty() ? "" : a.analytic_tag + "*transfer";
  return out;
}

double l2_norm(const FunctionSpec& f) {
  const auto r = integrate([&](double l) { return f(l) * f(l); }, 0.0, kPi, 1e-8, f.breakpoints(), 4);
  return std::sqrt(r.value);
}

}  // namespace stablespec
