#include "lenssplit/harness/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lenssplit::harness {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("linear_fit: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("linear_fit: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: abscissae are all equal");
  LinearFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.correlation = syy == 0.0 ? 1.0 : sxy / std::sqrt(sxx * syy);
  return fit;
}

LinearFit order_fit(std::span<const double> tau, std::span<const double> error) {
  if (tau.size() != error.size()) throw std::invalid_argument("order_fit: size mismatch");
  if (tau.size() < 3) throw std::invalid_argument("order_fit: refusing to fit fewer than 3 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (!(tau[i] > 0.0) || !(error[i] > 0.0) || !std::isfinite(error[i]))
      throw std::invalid_argument("order_fit: tau and error must be positive and finite");
    lx.push_back(std::log(tau[i]));
    ly.push_back(std::log(error[i]));
  }
  return linear_fit(lx, ly);
}

}  // namespace lenssplit::harness
