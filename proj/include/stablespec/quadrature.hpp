#pragma once

#include <functional>
#include <span>

namespace stablespec {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod over [lo, hi], split first at `breakpoints` (those
/// inside the interval) and then into `panels` equal pieces per segment so
/// oscillatory integrands are resolved. Throws ToleranceError if the summed
/// error estimate exceeds abs_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                           std::span<const double> breakpoints = {}, int panels = 1);

}  // namespace stablespec
