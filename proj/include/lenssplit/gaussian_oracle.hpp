#pragma once

// Exact Gaussian solutions of the logarithmic equation with repulsive
// harmonic potential. For u(t, x) = b(t) exp(-a(t) x^2/2) the width
// a = 1/mu^2 - i mu'/mu reduces the PDE to the scalar ODE
//     mu'' = 2 lambda/mu + 1/mu^3 + omega^2 mu,
// with first integral F(mu, mu') = mu'^2 - 4 lambda ln mu + 1/mu^2 - omega^2 mu^2,
// modulus |b| = |b0| sqrt(mu0/mu) and phase
//     theta' = -(1/(2 mu^2) + lambda ln(|b0|^2 mu0/mu)).

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lenssplit/spectral_grid.hpp"

namespace lenssplit {

struct GaussianState {
  double mu = 1.0;
  double mudot = 0.0;
  double bmod = 1.0;
  double theta = 0.0;
};

struct OdeParams {
  double lambda = 0.0;
  double omega = 1.0;
  double C0 = 0.0;  ///< value of the first integral on the trajectory

  static OdeParams from_state(double lambda, double omega, double mu0, double mudot0);
};

/// Gaussian state of u0(x) = amplitude * exp(-(alpha - i beta) x^2/2), alpha > 0.
GaussianState gaussian_initial_state(cplx amplitude, double alpha, double beta = 0.0);

double first_integral(double mu, double mudot, double lambda, double omega);

/// Right-hand side of the width equation; throws DomainError for mu <= 0.
double mu_rhs(double mu, const OdeParams& params);

struct GaussianSample {
  double t = 0.0;
  GaussianState state;
};

/// Classical RK4 on (mu, mu', theta) with fixed step dt (the last step is
/// shortened to land on t_end); |b| follows algebraically. Returns every step
/// including t = 0. Throws DomainError if mu leaves (0, inf).
std::vector<GaussianSample> integrate_gaussian(const GaussianState& init, const OdeParams& params, double t_end,
                                               double dt);

/// Forward-only RK4 marcher for querying the exact Gaussian at increasing times.
class GaussianPropagator {
 public:
  GaussianPropagator(const GaussianState& init, double lambda, double omega, double dt);
  /// State at time t >= the previous query time.
  GaussianState advance_to(double t);
  double time() const noexcept { return t_; }

 private:
  void rk4(double h);

  double lambda_, omega_, dt_;
  double mu0_, bmod0_;
  double t_ = 0.0;
  GaussianState state_;
};

/// Samples b exp(-a x^2/2) with a = 1/mu^2 - i mu'/mu, b = |b| e^{i theta}.
SpectralField exact_field(const GaussianState& state, GridPtr grid);

enum class Regime {
  TwoStationary,  ///< lambda < -omega: mu_+ < mu_-
  OneStationary,  ///< lambda = -omega: mu_0 = 1/sqrt(omega)
  AllUnbounded,   ///< -omega < lambda < 0
  Dispersive,     ///< lambda >= 0, no stationary Gaussian
};

struct RegimeReport {
  Regime regime = Regime::Dispersive;
  std::vector<double> stationary_mu;  ///< ascending
  std::string summary;
};

std::string to_string(Regime regime);

RegimeReport classify(double lambda, double omega);

struct PhaseBox {
  double mu_min = 0.1, mu_max = 3.0;
  double mudot_min = -3.0, mudot_max = 3.0;
};

/// One level set F = level through a seed point, as one or two polylines in
/// the (mu, mu') plane.
struct LevelCurve {
  double seed_mu = 0.0;
  double seed_mudot = 0.0;
  double level = 0.0;
  bool closed = false;      ///< both turning points found inside the box
  bool stationary = false;  ///< seed is a critical point; single-point curve
  std::vector<std::vector<std::array<double, 2>>> branches;
};

struct PhasePortrait {
  double lambda = 0.0, omega = 1.0;
  std::vector<double> stationary_mu;
  std::vector<LevelCurve> curves;
};

/// Level curve through one seed, restricted to mu in [box.mu_min, box.mu_max].
LevelCurve level_curve(double lambda, double omega, double seed_mu, double seed_mudot, const PhaseBox& box,
                       std::size_t samples_per_branch = 400);

/// Level curves through the stationary points and through n_trajectories
/// seeds: half on the mu axis (mu' = 0) spread over the box, half on the
/// vertical line through the first stationary point (or the box centre).
PhasePortrait phase_portrait(double lambda, double omega, const PhaseBox& box, std::size_t n_trajectories,
                             std::size_t samples_per_branch = 400);

}  // namespace lenssplit
