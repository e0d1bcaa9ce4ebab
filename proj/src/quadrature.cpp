#include "lenssplit/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace lenssplit {

double simpson(const std::function<double(double)>& f, double lo, double hi, std::size_t panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 != 0) ++panels;
  const double h = (hi - lo) / static_cast<double>(panels);
  double odd = 0.0, even = 0.0;
  for (std::size_t k = 1; k < panels; ++k) {
    const double v = f(lo + static_cast<double>(k) * h);
    (k % 2 != 0 ? odd : even) += v;
  }
  return h / 3.0 * (f(lo) + 4.0 * odd + 2.0 * even + f(hi));
}

double log_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

}  // namespace lenssplit
