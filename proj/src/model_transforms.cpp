#include "lenssplit/model_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lenssplit/quadrature.hpp"

namespace lenssplit {
namespace {

// Subpanels for integrating a function varying on the scale 1/omega over a
// t-interval of length dt.
std::size_t panels_for(double omega_dt, std::size_t minimum) {
  const auto scaled = static_cast<std::size_t>(std::ceil(200.0 * omega_dt));
  return std::max(minimum, scaled);
}

}  // namespace

void PhysParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("omega must be positive");
  if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
  if (kind == NonlinearityKind::Power && !(sigma > 0.0))
    throw std::invalid_argument("sigma must be positive for the power nonlinearity");
  if (kind == NonlinearityKind::Logarithmic && !(epsilon >= 0.0))
    throw std::invalid_argument("epsilon must be nonnegative");
}

std::string to_string(NonlinearityKind kind) {
  return kind == NonlinearityKind::Logarithmic ? "logarithmic" : "power";
}

std::string to_string(TimeGridKind kind) { return kind == TimeGridKind::UniformT ? "I" : "II"; }

double s_of_t(double t, double omega) { return std::tanh(omega * t) / omega; }

double t_of_s(double s, double omega) {
  const double r = omega * s;
  if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("t_of_s: need 0 <= omega*s < 1");
  return std::atanh(r) / omega;
}

TimeGrids TimeGrids::make(double T, std::size_t N, double omega, TimeGridKind kind) {
  if (!(T > 0.0)) throw std::invalid_argument("TimeGrids: T must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("TimeGrids: omega must be positive");
  TimeGrids g;
  g.T_ = T;
  g.N_ = N;
  g.omega_ = omega;
  g.kind_ = kind;
  g.t_.resize(N + 1);
  g.s_.resize(N + 1);
  if (kind == TimeGridKind::UniformT) {
    const double tau = N ? T / static_cast<double>(N) : 0.0;
    for (std::size_t n = 0; n <= N; ++n) {
      g.t_[n] = static_cast<double>(n) * tau;
      g.s_[n] = s_of_t(g.t_[n], omega);
    }
    g.t_[N] = T;
    g.s_[N] = s_of_t(T, omega);
  } else {
    const double sN = s_of_t(T, omega);
    const double ds = N ? sN / static_cast<double>(N) : 0.0;
    for (std::size_t n = 0; n <= N; ++n) {
      g.s_[n] = static_cast<double>(n) * ds;
      g.t_[n] = t_of_s(g.s_[n], omega);
    }
    g.s_[N] = sN;
    g.t_[N] = T;
  }
  g.delta_.resize(N);
  for (std::size_t n = 0; n < N; ++n) g.delta_[n] = g.s_[n + 1] - g.s_[n];
  return g;
}

double gauge_g(double s, double omega) {
  const double t = t_of_s(s, omega);
  if (t == 0.0) return 0.0;
  const auto integrand = [omega](double tp) { return log_cosh(omega * tp); };
  return -simpson(integrand, 0.0, t, panels_for(omega * t, 64));
}

std::vector<double> gauge_table(const TimeGrids& grids, std::size_t refine) {
  const double omega = grids.omega();
  const auto t = grids.t();
  const auto integrand = [omega](double tp) { return log_cosh(omega * tp); };
  std::vector<double> g(t.size(), 0.0);
  for (std::size_t n = 0; n + 1 < t.size(); ++n) {
    const double dt = t[n + 1] - t[n];
    g[n + 1] = g[n] - simpson(integrand, t[n], t[n + 1], panels_for(omega * dt, refine));
  }
  return g;
}

SpectralField reconstruct_u(const SpectralField& field_in_y, double t, const PhysParams& params,
                            bool include_gauge, GridPtr xgrid, std::optional<double> gauge) {
  const double omega = params.omega;
  const double ch = std::cosh(omega * t);
  const double th = std::tanh(omega * t);
  const SpatialGrid& ygrid = *field_in_y.grid;
  const auto x = xgrid->points();
  const std::size_t count = x.size();

  const double first = x.front() / ch;
  const double step = xgrid->spacing() / ch;
  const double last = x.back() / ch;
  const double slack = 1e-12 * ygrid.length();
  if (first < ygrid.a() - slack || last > ygrid.b() + slack)
    throw DomainError("reconstruct_u: x/cosh(omega t) leaves the y-domain");

  const std::vector<cplx> kappa = eval_uniform(field_in_y, first, step, count);
  double g = 0.0;
  if (include_gauge) g = gauge ? *gauge : gauge_g(s_of_t(t, omega), omega);
  const double amp = 1.0 / std::sqrt(ch);

  SpectralField u(xgrid);
  for (std::size_t j = 0; j < count; ++j) {
    const double phase = 0.5 * omega * x[j] * x[j] * th - params.lambda * g;
    u.values[j] = amp * std::polar(1.0, phase) * kappa[j];
  }
  return u;
}

VirialCheck virial_blowup_check(const SpectralField& u0, const PhysParams& params) {
  if (params.kind != NonlinearityKind::Power)
    throw std::invalid_argument("virial_blowup_check: power nonlinearity only");
  const SpatialGrid& grid = *u0.grid;
  const double h = grid.spacing();
  const SpectralField du = derivative(u0);
  const auto x = grid.points();

  const double grad2 = std::pow(l2_norm(du), 2);
  double potential = 0.0;
  double weighted = 0.0;
  double momentum = 0.0;  // Im int conj(u) x u'
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double mod = std::abs(u0.values[j]);
    potential += std::pow(mod, 2.0 * params.sigma + 2.0);
    weighted += x[j] * x[j] * mod * mod;
    momentum += (std::conj(u0.values[j]) * x[j] * du.values[j]).imag();
  }
  potential *= h;
  weighted *= h;
  momentum *= h;

  VirialCheck out;
  out.lhs = 0.5 * grad2 + params.lambda / (params.sigma + 1.0) * potential;
  out.rhs = -0.5 * params.omega * params.omega * weighted - params.omega * std::abs(momentum);
  out.holds = out.lhs < out.rhs;
  return out;
}

double j_norm(const SpectralField& u, double t, double omega) {
  const SpectralField du = derivative(u);
  const double sh = std::sinh(omega * t);
  const double ch = std::cosh(omega * t);
  const auto x = u.grid->points();
  std::vector<cplx> ju(u.size());
  for (std::size_t j = 0; j < ju.size(); ++j)
    ju[j] = omega * x[j] * sh * u.values[j] + cplx(0.0, ch) * du.values[j];
  return l2_norm(*u.grid, ju);
}

}  // namespace lenssplit
