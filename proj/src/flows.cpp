#include "lenssplit/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lenssplit/quadrature.hpp"
#include "lenssplit/simd/kernels.hpp"

namespace lenssplit {
namespace {

struct PhaseScratch {
  std::vector<double> mod, c, s;
  void resize(std::size_t n) {
    mod.resize(n);
    c.resize(n);
    s.resize(n);
  }
};

PhaseScratch& scratch(std::size_t n) {
  thread_local PhaseScratch buf;
  buf.resize(n);
  return buf;
}

}  // namespace

double raised_cosine_cutoff(double r) {
  const double a = std::abs(r);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double c = std::cos(0.5 * std::numbers::pi * (a - 1.0));
  return c * c;
}

std::vector<cplx> linear_symbol(const SpatialGrid& grid, double s, const CutoffSpec* cutoff) {
  const auto xi = grid.wavenumbers();
  std::vector<cplx> sym(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) sym[k] = std::polar(1.0, -0.5 * s * xi[k] * xi[k]);
  if (cutoff) {
    const double scale = std::sqrt(cutoff->tau);
    for (std::size_t k = 0; k < xi.size(); ++k) sym[k] *= cutoff->chi(scale * xi[k]);
  }
  return sym;
}

SpectralField linear_flow(const SpectralField& f, double s) {
  if (s == 0.0) return f;
  return apply_multiplier(f, linear_symbol(*f.grid, s));
}

SpectralField apply_cutoff(const SpectralField& f, const CutoffSpec& spec) {
  if (!(spec.tau > 0.0)) throw std::invalid_argument("apply_cutoff: tau must be positive");
  const double scale = std::sqrt(spec.tau);
  return apply_multiplier(f, [&](double xi) { return cplx(spec.chi(scale * xi), 0.0); });
}

double log_flow_exponent(double s_n, double s, double omega) {
  return (std::atanh(omega * (s_n + s)) - std::atanh(omega * s_n)) / omega;
}

void apply_log_phase(std::span<cplx> z, double coef, double eps) {
  auto& buf = scratch(z.size());
  simd::modulus(z, buf.mod);
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double phase = coef * std::log(buf.mod[j] + eps);
    buf.c[j] = std::cos(phase);
    buf.s[j] = std::sin(phase);
  }
  simd::rotate(z, buf.c, buf.s);
}

void apply_power_phase(std::span<cplx> z, double lambda_q, double sigma) {
  auto& buf = scratch(z.size());
  simd::modulus(z, buf.mod);
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double phase = -lambda_q * std::pow(buf.mod[j], 2.0 * sigma);
    buf.c[j] = std::cos(phase);
    buf.s[j] = std::sin(phase);
  }
  simd::rotate(z, buf.c, buf.s);
}

SpectralField log_nonlinear_flow(const SpectralField& z, double s_n, double s, const PhysParams& params) {
  if (params.kind != NonlinearityKind::Logarithmic)
    throw std::invalid_argument("log_nonlinear_flow: model is not logarithmic");
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("log_nonlinear_flow: epsilon must be positive");
  const double limit = 1.0 / params.omega;
  if (s_n < 0.0 || s_n >= limit || s_n + s < 0.0 || s_n + s >= limit)
    throw DomainError("log_nonlinear_flow: interval leaves [0, 1/omega)");
  SpectralField out = z;
  if (s == 0.0 || params.lambda == 0.0) return out;
  const double coef = -2.0 * params.lambda * log_flow_exponent(s_n, s, params.omega);
  apply_log_phase(out.values, coef, params.epsilon);
  return out;
}

double sech_power_integral(double t0, double t1, double omega, double sigma, std::size_t refine) {
  if (t0 == t1) return 0.0;
  const auto integrand = [omega, sigma](double zeta) { return std::exp(-sigma * log_cosh(omega * zeta)); };
  const double span = std::abs(t1 - t0);
  const auto panels = std::max(refine, static_cast<std::size_t>(std::ceil(200.0 * omega * span)));
  return simpson(integrand, t0, t1, panels);
}

SpectralField power_nonlinear_flow(const SpectralField& z, double t_n, double t_np1, const PhysParams& params,
                                   std::size_t refine) {
  if (params.kind != NonlinearityKind::Power)
    throw std::invalid_argument("power_nonlinear_flow: model is not a power nonlinearity");
  if (t_n < 0.0 || t_np1 < 0.0) throw DomainError("power_nonlinear_flow: times must be nonnegative");
  SpectralField out = z;
  if (params.lambda == 0.0 || t_n == t_np1) return out;
  const double q = sech_power_integral(t_n, t_np1, params.omega, params.sigma, refine);
  apply_power_phase(out.values, params.lambda * q, params.sigma);
  return out;
}

}  // namespace lenssplit
