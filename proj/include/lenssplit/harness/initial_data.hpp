#pragma once

// Initial data expressions: a '+' separated sum of terms
//   gauss(A, alpha [, center [, beta]])  A exp(-(alpha - i beta)(x - center)^2 / 2)
//   sechx2(A)                            A sech(x^2/2)
//   sechx2sin(A)                         A sech(x^2/2) sin(x)
// e.g. "gauss(2, 0.5, 3) + gauss(2, 2, -3)".

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lenssplit/gaussian_oracle.hpp"
#include "lenssplit/types.hpp"

namespace lenssplit::harness {

struct InitialTerm {
  enum class Kind { Gauss, SechX2, SechX2Sin };
  Kind kind = Kind::Gauss;
  double amplitude = 1.0;
  double alpha = 1.0;
  double center = 0.0;
  double beta = 0.0;

  cplx operator()(double x) const;
};

struct InitialData {
  std::vector<InitialTerm> terms;

  /// Throws ConfigError (tagged with `line`) on syntax errors.
  static InitialData parse(std::string_view text, std::size_t line = 0);

  cplx operator()(double x) const;
  /// The Gaussian parametrization when the data is one centred Gaussian.
  std::optional<GaussianState> gaussian() const;
};

}  // namespace lenssplit::harness
