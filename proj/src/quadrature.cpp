#include "stablespec/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>
#include <vector>

#include "stablespec/error.hpp"

namespace stablespec {

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                           std::span<const double> breakpoints, int panels) {
  std::vector<double> cuts{lo};
  for (double b : breakpoints) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const int pieces = std::max(panels, 1);
  QuadratureResult total;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double width = (cuts[s + 1] - cuts[s]) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double a = cuts[s] + width * p;
      const double b = (p + 1 == pieces) ? cuts[s + 1] : a + width;
      double err = 0.0;
      const double v = Rule::integrate(f, a, b, 10, 1e-12, &err);
      total.value += v;
      total.error_estimate += std::max(err, 0.0);
    }
  }
  if (!(total.error_estimate <= abs_tol) || !std::isfinite(total.value)) {
    std::ostringstream msg;
    msg << "quadrature did not reach tolerance " << abs_tol << " on [" << lo << ", " << hi
        << "]: error estimate " << total.error_estimate << ", value " << total.value;
    throw ToleranceError("quadrature", msg.str());
  }
  return total;
}

}  // namespace stablespec
