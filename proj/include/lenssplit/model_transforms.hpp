#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lenssplit/spectral_grid.hpp"

namespace lenssplit {

enum class NonlinearityKind { Logarithmic, Power };

/// Coefficients of  i u_t + u_xx/2 = -(omega^2 x^2/2) u + lambda N(u)  with
/// N(u) = u ln|u|^2 (regularized by epsilon) or |u|^{2 sigma} u.
struct PhysParams {
  double lambda = 0.0;
  double omega = 1.0;
  NonlinearityKind kind = NonlinearityKind::Logarithmic;
  double sigma = 1.0;     ///< power exponent, Power only
  double epsilon = 0.0;   ///< log regularization, Logarithmic only

  /// Throws std::invalid_argument on omega <= 0, sigma <= 0 (Power) or
  /// epsilon < 0 (Logarithmic).
  void validate() const;
};

std::string to_string(NonlinearityKind kind);

/// s = tanh(omega t)/omega.
double s_of_t(double t, double omega);
/// Inverse of s_of_t; throws DomainError unless 0 <= omega s < 1.
double t_of_s(double s, double omega);

enum class TimeGridKind {
  UniformT,  ///< "grid I": t_n = n T/N, s_n = s_of_t(t_n)
  UniformS,  ///< "grid II": s_n = n s_N/N, t_n = t_of_s(s_n)
};

std::string to_string(TimeGridKind kind);

/// Paired physical-time / lens-time step sequences.
class TimeGrids {
 public:
  TimeGrids() = default;
  static TimeGrids make(double T, std::size_t N, double omega, TimeGridKind kind);

  double final_time() const noexcept { return T_; }
  std::size_t steps() const noexcept { return N_; }
  double tau() const noexcept { return N_ ? T_ / static_cast<double>(N_) : 0.0; }
  double omega() const noexcept { return omega_; }
  TimeGridKind kind() const noexcept { return kind_; }

  std::span<const double> t() const noexcept { return t_; }
  std::span<const double> s() const noexcept { return s_; }
  /// delta_n = s_{n+1} - s_n, n = 0..N-1.
  std::span<const double> delta() const noexcept { return delta_; }

 private:
  double T_ = 0.0;
  std::size_t N_ = 0;
  double omega_ = 1.0;
  TimeGridKind kind_ = TimeGridKind::UniformT;
  std::vector<double> t_, s_, delta_;
};

/// Gauge phase g(s) = (1/2) int_0^s ln(1 - w^2 p^2)/(1 - w^2 p^2) dp,
/// evaluated as -int_0^{t(s)} ln cosh(w t') dt' by composite Simpson.
/// Throws DomainError for s >= 1/omega or s < 0.
double gauge_g(double s, double omega);

/// g(s_n) for every node of `grids`, by cumulative Simpson with at least
/// `refine` subpanels per step.
std::vector<double> gauge_table(const TimeGrids& grids, std::size_t refine = 20);

/// Maps a field on the lens grid (y) back to physical variables on `xgrid`:
///   u(x) = cosh(w t)^{-1/2} exp(i (w/2) x^2 tanh(w t) - i lambda g) field(x / cosh(w t)),
/// g = g(s_of_t(t)) when include_gauge is set (pass `gauge` to reuse a
/// tabulated value). Throws DomainError if some x/cosh(w t) falls outside
/// the y-domain.
SpectralField reconstruct_u(const SpectralField& field_in_y, double t, const PhysParams& params,
                            bool include_gauge, GridPtr xgrid, std::optional<double> gauge = std::nullopt);

struct VirialCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Sufficient condition for blow-up of the focusing power equation in both
/// time directions:
///   (1/2)||u0'||^2 + lambda/(sigma+1) ||u0||_{2sigma+2}^{2sigma+2}
///     < -(w^2/2)||x u0||^2 - w |Im int conj(u0) x u0' dx|.
VirialCheck virial_blowup_check(const SpectralField& u0, const PhysParams& params);

/// ||J(t) u||_{L2} with J(t) = w x sinh(w t) + i cosh(w t) d/dx.
double j_norm(const SpectralField& u, double t, double omega);

}  // namespace lenssplit
