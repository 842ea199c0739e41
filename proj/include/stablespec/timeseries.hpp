#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stablespec/rng.hpp"

namespace stablespec {

/// Closed-form description of the infinite filter a finite LinearFilter was
/// truncated from. Used for the summability verdict on the untruncated tail.
struct FilterTail {
  enum class Kind { kNone, kGeometric, kPower };
  Kind kind = Kind::kNone;
  double parameter = 0.0;  // ratio r for |psi_j| ~ r^|j|, exponent p for |psi_j| ~ |j|^-p

  friend bool operator==(const FilterTail&, const FilterTail&) = default;
};

/// Two-sided filter psi_j with finite support [min_lag, min_lag + coeffs.size() - 1].
class LinearFilter {
 public:
  LinearFilter(int min_lag, std::vector<double> coeffs, FilterTail tail = {});

  static LinearFilter identity();
  static LinearFilter scaled_identity(double c);
  // psi_0 = 1, psi_1 = theta.
  static LinearFilter ma1(double theta);
  // psi_j = r^j for j = 0..radius (one-sided, AR(1)-equivalent), tagged geometric.
  static LinearFilter geometric(double r, int radius);
  // psi_j = r^|j| for |j| <= radius, tagged geometric.
  static LinearFilter two_sided_geometric(double r, int radius);
  // psi_0 = 1, psi_j = j^-p for j = 1..radius, tagged power.
  static LinearFilter power_law(double p, int radius);

  int min_lag() const { return min_lag_; }
  int max_lag() const { return min_lag_ + static_cast<int>(coeffs_.size()) - 1; }
  double coeff(int lag) const;
  std::span<const double> coeffs() const { return coeffs_; }
  const FilterTail& tail() const { return tail_; }
  // Largest |j| kept after truncation.
  int truncation_radius() const;

  // Compact textual form, e.g. "ma1:0.5" or "coeffs:0:1,0.5"; parse() accepts both.
  std::string describe() const;
  static LinearFilter parse(const std::string& text);

  friend bool operator==(const LinearFilter&, const LinearFilter&) = default;

 private:
  int min_lag_;
  std::vector<double> coeffs_;
  FilterTail tail_;
};

enum class PathOrigin { kIid, kLinear, kExternal };

struct Provenance {
  PathOrigin origin = PathOrigin::kExternal;
  std::optional<LinearFilter> filter;  // set for kLinear
  RngStream stream{};                  // meaningful for simulated paths
};

/// Finite real sample X_1..X_n.
struct SamplePath {
  std::vector<double> values;
  double alpha = 0.0;
  Provenance provenance;

  std::size_t size() const { return values.size(); }
  // Throws if empty or any value is not finite.
  void validate() const;
};

struct LinearSimulation {
  SamplePath process;      // X_1..X_n
  SamplePath innovations;  // eps_1..eps_n
  // Every innovation the process touched: eps_t for t = first_index .. first_index + size - 1.
  std::vector<double> all_innovations;
  long first_index = 1;

  double innovation_at(long t) const { return all_innovations.at(static_cast<std::size_t>(t - first_index)); }
};

SamplePath simulate_iid(std::size_t n, double alpha, const RngStream& stream);

/// X_t = sum_j psi_j eps_{t-j}, exact over the filter support; no burn-in.
LinearSimulation simulate_linear(std::size_t n, const LinearFilter& filter, double alpha,
                                 const RngStream& stream);

/// Uncentered gamma_n(h) = (1/n) sum_{t=1}^{n-h} X_t X_{t+h}; zero for h >= n.
double sample_autocov(std::span<const double> x, std::size_t h);
double sample_autocov(const SamplePath& path, std::size_t h);

/// gamma_n(h) / gamma_n(0). Throws DegenerateError on an all-zero path.
double sample_autocorr(const SamplePath& path, std::size_t h);

/// gamma_n(0..max_lag). Direct evaluation for short lag ranges, FFT otherwise.
std::vector<double> autocov_lags(std::span<const double> x, std::size_t max_lag);

}  // namespace stablespec
