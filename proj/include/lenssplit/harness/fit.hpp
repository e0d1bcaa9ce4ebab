#pragma once

#include <cstddef>
#include <span>

namespace lenssplit::harness {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double correlation = 0.0;  ///< Pearson r of (x, y)
  std::size_t points = 0;
};

/// Ordinary least squares y ~ slope x + intercept. Throws std::invalid_argument
/// on size mismatch or fewer than two points.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Slope of log(error) against log(tau): the observed order of convergence.
/// Refuses (std::invalid_argument) fewer than three points or non-positive data.
LinearFit order_fit(std::span<const double> tau, std::span<const double> error);

}  // namespace lenssplit::harness
