#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace lenssplit {

using cplx = std::complex<double>;

/// Raised when an argument lies outside the domain where an operation is
/// defined (e.g. s >= 1/omega for the lens variables, mu <= 0 for the
/// width ODE, off-grid targets outside the computational interval).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a computation produces non-finite values.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace lenssplit
