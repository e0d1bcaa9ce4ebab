#pragma once

#include <cstddef>
#include <functional>

namespace lenssplit {

/// Composite Simpson rule on [lo, hi] with `panels` subintervals (rounded up
/// to an even count, at least 2).
double simpson(const std::function<double(double)>& f, double lo, double hi, std::size_t panels);

/// ln cosh(x) without overflow for large |x|.
double log_cosh(double x);

}  // namespace lenssplit
