#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lenssplit/model_transforms.hpp"
#include "lenssplit/spectral_grid.hpp"

namespace lenssplit {

/// C^1 raised-cosine profile: 1 on [-1, 1], cos^2(pi (|r| - 1)/2) on
/// 1 <= |r| <= 2, 0 beyond.
double raised_cosine_cutoff(double r);

/// Frequency cut-off Pi_tau with symbol chi(sqrt(tau) xi).
struct CutoffSpec {
  double tau = 0.0;
  std::function<double(double)> chi = raised_cosine_cutoff;
};

/// Fourier symbol of the free flow exp((i s/2) d_yy), optionally composed
/// with the cut-off, in FFT slot order.
std::vector<cplx> linear_symbol(const SpatialGrid& grid, double s, const CutoffSpec* cutoff = nullptr);

/// exp((i s/2) d_yy) f; s may be negative.
SpectralField linear_flow(const SpectralField& f, double s);

SpectralField apply_cutoff(const SpectralField& f, const CutoffSpec& spec);

/// I(s_n, s) = int_0^s dp / (1 - w^2 (s_n + p)^2), in closed form.
double log_flow_exponent(double s_n, double s, double omega);

/// Exact flow of  z_s = -2 i lambda ln(|z| + eps) z / (1 - w^2 s^2)  from s_n
/// to s_n + s. Throws DomainError if s_n + s >= 1/omega or s_n < 0, and
/// std::invalid_argument for a non-logarithmic model or eps == 0.
SpectralField log_nonlinear_flow(const SpectralField& z, double s_n, double s, const PhysParams& params);

/// Q = int_{t0}^{t1} sech^sigma(w zeta) d zeta by composite Simpson with at
/// least `refine` subpanels (more for long intervals). Reversed bounds give -Q.
double sech_power_integral(double t0, double t1, double omega, double sigma, std::size_t refine = 20);

/// Exact flow of the power sub-problem over physical times [t_n, t_np1]:
/// z exp(-i lambda |z|^{2 sigma} Q).
SpectralField power_nonlinear_flow(const SpectralField& z, double t_n, double t_np1, const PhysParams& params,
                                   std::size_t refine = 20);

// In-place kernels shared with the time steppers.

/// z_j *= exp(i coef ln(|z_j| + eps)).
void apply_log_phase(std::span<cplx> z, double coef, double eps);
/// z_j *= exp(-i lambda_q |z_j|^{2 sigma}), lambda_q = lambda * Q.
void apply_power_phase(std::span<cplx> z, double lambda_q, double sigma);

}  // namespace lenssplit
