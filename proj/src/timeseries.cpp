#include "stablespec/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "stablespec/error.hpp"
#include "stablespec/kernels.hpp"
#include "stablespec/stable.hpp"

namespace stablespec {

namespace {

double parse_double(const std::string& s, const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw ConfigError(field, "not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s, const std::string& field) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError(field, "not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// Direct alpha-check shared by the simulators; alpha = 2 is excluded here
// because the innovations are meant to have infinite variance.
void check_innovation_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ParameterDomainError("alpha", "innovation stability index must lie in (0, 2), got " + format_double(alpha));
  }
}

}  // namespace

LinearFilter::LinearFilter(int min_lag, std::vector<double> coeffs, FilterTail tail)
    : min_lag_(min_lag), coeffs_(std::move(coeffs)), tail_(tail) {
  if (coeffs_.empty()) throw ParameterDomainError("filter", "filter must have at least one coefficient");
  bool any_nonzero = false;
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw ParameterDomainError("filter", "filter coefficients must be finite");
    any_nonzero = any_nonzero || c != 0.0;
  }
  if (!any_nonzero) throw ParameterDomainError("filter", "filter needs at least one nonzero coefficient");
}

LinearFilter LinearFilter::identity() { return LinearFilter(0, {1.0}); }

LinearFilter LinearFilter::scaled_identity(double c) { return LinearFilter(0, {c}); }

LinearFilter LinearFilter::ma1(double theta) { return LinearFilter(0, {1.0, theta}); }

LinearFilter LinearFilter::geometric(double r, int radius) {
  if (radius < 0) throw ParameterDomainError("radius", "truncation radius must be >= 0");
  if (!(std::abs(r) < 1.0)) throw ParameterDomainError("ratio", "geometric ratio must satisfy |r| < 1");
  std::vector<double> c(static_cast<std::size_t>(radius) + 1);
  for (int j = 0; j <= radius; ++j) c[static_cast<std::size_t>(j)] = std::pow(r, j);
  return LinearFilter(0, std::move(c), {FilterTail::Kind::kGeometric, std::abs(r)});
}

LinearFilter LinearFilter::two_sided_geometric(double r, int radius) {
  if (radius < 0) throw ParameterDomainError("radius", "truncation radius must be >= 0");
  if (!(std::abs(r) < 1.0)) throw ParameterDomainError("ratio", "geometric ratio must satisfy |r| < 1");
  std::vector<double> c(2 * static_cast<std::size_t>(radius) + 1);
  for (int j = -radius; j <= radius; ++j) c[static_cast<std::size_t>(j + radius)] = std::pow(r, std::abs(j));
  return LinearFilter(-radius, std::move(c), {FilterTail::Kind::kGeometric, std::abs(r)});
}

LinearFilter LinearFilter::power_law(double p, int radius) {
  if (radius < 1) throw ParameterDomainError("radius", "truncation radius must be >= 1");
  if (!(p > 0.0)) throw ParameterDomainError("exponent", "power-law exponent must be > 0");
  std::vector<double> c(static_cast<std::size_t>(radius) + 1);
  c[0] = 1.0;
  for (int j = 1; j <= radius; ++j) c[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(j), -p);
  return LinearFilter(0, std::move(c), {FilterTail::Kind::kPower, p});
}

double LinearFilter::coeff(int lag) const {
  if (lag < min_lag_ || lag > max_lag()) return 0.0;
  return coeffs_[static_cast<std::size_t>(lag - min_lag_)];
}

int LinearFilter::truncation_radius() const { return std::max(std::abs(min_lag_), std::abs(max_lag())); }

std::string LinearFilter::describe() const {
  std::ostringstream out;
  out << "coeffs:" << min_lag_ << ':';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out << ',';
    out << format_double(coeffs_[i]);
  }
  if (tail_.kind == FilterTail::Kind::kGeometric) out << ":geometric=" << format_double(tail_.parameter);
  if (tail_.kind == FilterTail::Kind::kPower) out << ":power=" << format_double(tail_.parameter);
  return out.str();
}

LinearFilter LinearFilter::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw ConfigError("filter", "empty filter specification");
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) -> const std::string& {
    if (parts.size() <= i) throw ConfigError("filter", "filter '" + text + "' is missing arguments");
    return parts[i];
  };
  if (kind == "identity") return identity();
  if (kind == "scaled") return scaled_identity(parse_double(arg(1), "filter"));
  if (kind == "ma1") return ma1(parse_double(arg(1), "filter"));
  if (kind == "geometric") return geometric(parse_double(arg(1), "filter"), parse_int(arg(2), "filter"));
  if (kind == "two_sided_geometric") {
    return two_sided_geometric(parse_double(arg(1), "filter"), parse_int(arg(2), "filter"));
  }
  if (kind == "power") return power_law(parse_double(arg(1), "filter"), parse_int(arg(2), "filter"));
  if (kind == "coeffs") {
    const int min_lag = parse_int(arg(1), "filter");
    std::vector<double> c;
    for (const auto& s : split(arg(2), ',')) c.push_back(parse_double(s, "filter"));
    FilterTail tail;
    if (parts.size() > 3) {
      const auto kv = split(parts[3], '=');
      if (kv.size() != 2) throw ConfigError("filter", "bad tail tag '" + parts[3] + "'");
      if (kv[0] == "geometric") tail = {FilterTail::Kind::kGeometric, parse_double(kv[1], "filter")};
      else if (kv[0] == "power") tail = {FilterTail::Kind::kPower, parse_double(kv[1], "filter")};
      else throw ConfigError("filter", "unknown tail tag '" + kv[0] + "'");
    }
    return LinearFilter(min_lag, std::move(c), tail);
  }
  throw ConfigError("filter", "unknown filter kind '" + kind + "'");
}

void SamplePath::validate() const {
  if (values.empty()) throw ParameterDomainError("path", "sample path must have n >= 1");
  for (double v : values) {
    if (!std::isfinite(v)) throw DegenerateError("path", "sample path contains a non-finite value");
  }
}

SamplePath simulate_iid(std::size_t n, double alpha, const RngStream& stream) {
  check_innovation_alpha(alpha);
  if (n == 0) throw ParameterDomainError("n", "path length must be >= 1");
  SamplePath path;
  path.values = sample_stable(StableLaw::symmetric(alpha), stream, n);
  path.alpha = alpha;
  path.provenance = {PathOrigin::kIid, std::nullopt, stream};
  return path;
}

LinearSimulation simulate_linear(std::size_t n, const LinearFilter& filter, double alpha,
                                 const RngStream& stream) {
  check_innovation_alpha(alpha);
  if (n == 0) throw ParameterDomainError("n", "path length must be >= 1");
  const long len = static_cast<long>(n);
  // X_t touches eps_{t-j} for t in [1, n], j in [min_lag, max_lag].
  const long first = std::min(1L, 1L - filter.max_lag());
  const long last = std::max(len, len - filter.min_lag());

  LinearSimulation sim;
  sim.first_index = first;
  sim.all_innovations =
      sample_stable(StableLaw::symmetric(alpha), stream, static_cast<std::size_t>(last - first + 1));

  sim.process.values.assign(n, 0.0);
  for (long t = 1; t <= len; ++t) {
    double acc = 0.0;
    for (int j = filter.min_lag(); j <= filter.max_lag(); ++j) {
      const double psi = filter.coeff(j);
      if (psi != 0.0) acc += psi * sim.innovation_at(t - j);
    }
    sim.process.values[static_cast<std::size_t>(t - 1)] = acc;
  }
  sim.process.alpha = alpha;
  sim.process.provenance = {PathOrigin::kLinear, filter, stream};

  const auto offset = static_cast<std::size_t>(1 - first);
  sim.innovations.values.assign(sim.all_innovations.begin() + static_cast<std::ptrdiff_t>(offset),
                                sim.all_innovations.begin() + static_cast<std::ptrdiff_t>(offset + n));
  sim.innovations.alpha = alpha;
  sim.innovations.provenance = {PathOrigin::kIid, std::nullopt, stream};
  return sim;
}

double sample_autocov(std::span<const double> x, std::size_t h) {
  const std::size_t n = x.size();
  if (n == 0 || h >= n) return 0.0;
  double acc = 0.0;
  for (std::size_t t = 0; t + h < n; ++t) acc += x[t] * x[t + h];
  return acc / static_cast<double>(n);
}

double sample_autocov(const SamplePath& path, std::size_t h) { return sample_autocov(path.values, h); }

double sample_autocorr(const SamplePath& path, std::size_t h) {
  const double g0 = sample_autocov(path, 0);
  if (!(g0 > 0.0)) throw DegenerateError("path", "autocorrelation of an all-zero path is undefined");
  return sample_autocov(path, h) / g0;
}

std::vector<double> autocov_lags(std::span<const double> x, std::size_t max_lag) {
  // Direct sums are exact to rounding and cheap when few lags are needed.
  const std::size_t lags = std::min(max_lag, x.empty() ? 0 : x.size() - 1);
  if (x.size() <= 512 || lags <= 64) {
    auto out = kernels::serial::autocov_lags(x, lags);
    out.resize(max_lag + 1, 0.0);
    return out;
  }
  return kernels::fft::autocov_lags(x, max_lag);
}

}  // namespace stablespec
