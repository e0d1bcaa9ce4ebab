#include "lenssplit/gaussian_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lenssplit {

OdeParams OdeParams::from_state(double lambda, double omega, double mu0, double mudot0) {
  return {lambda, omega, first_integral(mu0, mudot0, lambda, omega)};
}

GaussianState gaussian_initial_state(cplx amplitude, double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gaussian_initial_state: alpha must be positive");
  const double mu0 = 1.0 / std::sqrt(alpha);
  return {mu0, beta * mu0, std::abs(amplitude), std::arg(amplitude)};
}

double first_integral(double mu, double mudot, double lambda, double omega) {
  return mudot * mudot - 4.0 * lambda * std::log(mu) + 1.0 / (mu * mu) - omega * omega * mu * mu;
}

double mu_rhs(double mu, const OdeParams& params) {
  if (!(mu > 0.0)) throw DomainError("mu_rhs: mu must be positive");
  return 2.0 * params.lambda / mu + 1.0 / (mu * mu * mu) + params.omega * params.omega * mu;
}

GaussianPropagator::GaussianPropagator(const GaussianState& init, double lambda, double omega, double dt)
    : lambda_(lambda), omega_(omega), dt_(dt), mu0_(init.mu), bmod0_(init.bmod), state_(init) {
  if (!(dt > 0.0)) throw std::invalid_argument("GaussianPropagator: dt must be positive");
  if (!(init.mu > 0.0)) throw DomainError("GaussianPropagator: mu must be positive");
}

void GaussianPropagator::rk4(double h) {
  const OdeParams p{lambda_, omega_, 0.0};
  const double log_b0 = std::log(bmod0_ * bmod0_ * mu0_);
  const auto theta_dot = [&](double mu) { return -(0.5 / (mu * mu) + lambda_ * (log_b0 - std::log(mu))); };
  const auto guard = [](double mu) {
    if (!(mu > 0.0)) throw DomainError("integrate_gaussian: mu left (0, inf); reduce dt");
    return mu;
  };

  const double mu = state_.mu, v = state_.mudot;
  const double k1m = v, k1v = mu_rhs(mu, p), k1t = theta_dot(mu);
  const double mu2 = guard(mu + 0.5 * h * k1m), v2 = v + 0.5 * h * k1v;
  const double k2m = v2, k2v = mu_rhs(mu2, p), k2t = theta_dot(mu2);
  const double mu3 = guard(mu + 0.5 * h * k2m), v3 = v + 0.5 * h * k2v;
  const double k3m = v3, k3v = mu_rhs(mu3, p), k3t = theta_dot(mu3);
  const double mu4 = guard(mu + h * k3m), v4 = v + h * k3v;
  const double k4m = v4, k4v = mu_rhs(mu4, p), k4t = theta_dot(mu4);

  state_.mu = guard(mu + h / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m));
  state_.mudot = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  state_.theta += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
  state_.bmod = bmod0_ * std::sqrt(mu0_ / state_.mu);
}

GaussianState GaussianPropagator::advance_to(double t) {
  if (t < t_ - 1e-14 * std::max(1.0, t_)) throw std::invalid_argument("GaussianPropagator: time went backwards");
  while (t - t_ > 1e-14 * std::max(1.0, t)) {
    const double h = std::min(dt_, t - t_);
    rk4(h);
    t_ += h;
  }
  return state_;
}

std::vector<GaussianSample> integrate_gaussian(const GaussianState& init, const OdeParams& params, double t_end,
                                               double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_gaussian: dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("integrate_gaussian: t_end must be nonnegative");
  GaussianPropagator prop(init, params.lambda, params.omega, dt);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  std::vector<GaussianSample> out;
  out.reserve(steps + 1);
  out.push_back({0.0, init});
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = std::min(t_end, static_cast<double>(k) * dt);
    out.push_back({t, prop.advance_to(t)});
  }
  return out;
}

SpectralField exact_field(const GaussianState& state, GridPtr grid) {
  const cplx a(1.0 / (state.mu * state.mu), -state.mudot / state.mu);
  const cplx b = std::polar(state.bmod, state.theta);
  return sample(std::move(grid), [&](double x) { return b * std::exp(-0.5 * a * x * x); });
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::TwoStationary: return "two-stationary";
    case Regime::OneStationary: return "one-stationary";
    case Regime::AllUnbounded: return "all-unbounded";
    case Regime::Dispersive: return "dispersive";
  }
  return "unknown";
}

RegimeReport classify(double lambda, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("classify: omega must be positive");
  RegimeReport r;
  std::ostringstream msg;
  msg.precision(17);
  const double tol = 1e-12 * omega;
  if (lambda >= 0.0) {
    r.regime = Regime::Dispersive;
    msg << "lambda >= 0: no stationary Gaussian; every Gaussian solution disperses exponentially";
  } else if (lambda < -omega - tol) {
    r.regime = Regime::TwoStationary;
    const double root = std::sqrt(lambda * lambda - omega * omega);
    const double k_plus = -lambda + root;
    const double k_minus = -lambda - root;
    r.stationary_mu = {1.0 / std::sqrt(k_plus), 1.0 / std::sqrt(k_minus)};
    msg << "lambda < -omega: two stationary widths mu+ = " << r.stationary_mu[0] << ", mu- = " << r.stationary_mu[1]
        << "; other Gaussian solutions are time periodic or dispersive";
  } else if (std::abs(lambda + omega) <= tol) {
    r.regime = Regime::OneStationary;
    r.stationary_mu = {1.0 / std::sqrt(omega)};
    msg << "lambda = -omega: one stationary width mu0 = " << r.stationary_mu[0] << "; all other Gaussians disperse";
  } else {
    r.regime = Regime::AllUnbounded;
    msg << "-omega < lambda < 0: every Gaussian solution disperses exponentially";
  }
  r.summary = msg.str();
  return r;
}

namespace {

// mu'^2 on the level set F = level.
double radicand(double mu, double level, double lambda, double omega) {
  return level + 4.0 * lambda * std::log(mu) - 1.0 / (mu * mu) + omega * omega * mu * mu;
}

// Root of the radicand inside [neg, pos] where it is < 0 at neg and >= 0 at pos.
double bisect(double neg, double pos, double level, double lambda, double omega) {
  for (int it = 0; it < 200 && std::abs(pos - neg) > 1e-15 * std::abs(pos); ++it) {
    const double mid = 0.5 * (neg + pos);
    (radicand(mid, level, lambda, omega) < 0.0 ? neg : pos) = mid;
  }
  return pos;
}

struct Endpoint {
  double mu;
  bool root;
};

Endpoint scan(double from, double direction, double limit, double step, double level, double lambda, double omega) {
  double prev = from;
  for (;;) {
    double next = prev + direction * step;
    if ((direction < 0.0 && next <= limit) || (direction > 0.0 && next >= limit)) {
      next = limit;
      if (radicand(next, level, lambda, omega) >= 0.0) return {limit, false};
      return {bisect(next, prev, level, lambda, omega), true};
    }
    if (radicand(next, level, lambda, omega) < 0.0) return {bisect(next, prev, level, lambda, omega), true};
    prev = next;
  }
}

std::vector<std::array<double, 2>> branch(double lo, double hi, double sign, std::size_t samples, double level,
                                          double lambda, double omega) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(samples + 1);
  for (std::size_t k = 0; k <= samples; ++k) {
    const double u = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples)));
    const double mu = lo + (hi - lo) * u;
    pts.push_back({mu, sign * std::sqrt(std::max(0.0, radicand(mu, level, lambda, omega)))});
  }
  return pts;
}

}  // namespace

LevelCurve level_curve(double lambda, double omega, double seed_mu, double seed_mudot, const PhaseBox& box,
                       std::size_t samples_per_branch) {
  if (!(box.mu_min > 0.0) || !(box.mu_max > box.mu_min)) throw std::invalid_argument("phase box must lie in mu > 0");
  if (seed_mu < box.mu_min || seed_mu > box.mu_max) throw std::invalid_argument("seed outside the phase box");
  LevelCurve c;
  c.seed_mu = seed_mu;
  c.seed_mudot = seed_mudot;
  c.level = first_integral(seed_mu, seed_mudot, lambda, omega);

  const OdeParams p{lambda, omega, c.level};
  const double scale = 1.0 / (seed_mu * seed_mu * seed_mu) + omega * omega * seed_mu;
  if (seed_mudot == 0.0 && std::abs(mu_rhs(seed_mu, p)) <= 1e-9 * scale) {
    c.stationary = true;
    c.closed = true;
    c.branches.push_back({{seed_mu, 0.0}});
    return c;
  }

  const double step = (box.mu_max - box.mu_min) / 4000.0;
  const Endpoint lo = scan(seed_mu, -1.0, box.mu_min, step, c.level, lambda, omega);
  const Endpoint hi = scan(seed_mu, +1.0, box.mu_max, step, c.level, lambda, omega);
  c.closed = lo.root && hi.root;

  auto upper = branch(lo.mu, hi.mu, +1.0, samples_per_branch, c.level, lambda, omega);
  auto lower = branch(lo.mu, hi.mu, -1.0, samples_per_branch, c.level, lambda, omega);
  std::reverse(lower.begin(), lower.end());
  if (lo.root && hi.root) {
    upper.insert(upper.end(), lower.begin() + 1, lower.end());
    c.branches.push_back(std::move(upper));
  } else if (hi.root) {
    // Joined at the right turning point: enters through the left edge twice.
    upper.insert(upper.end(), lower.begin() + 1, lower.end());
    c.branches.push_back(std::move(upper));
  } else if (lo.root) {
    // Joined at the left turning point: leaves through the right edge twice.
    std::reverse(upper.begin(), upper.end());
    std::reverse(lower.begin(), lower.end());
    upper.insert(upper.end(), lower.begin() + 1, lower.end());
    c.branches.push_back(std::move(upper));
  } else {
    c.branches.push_back(std::move(upper));
    c.branches.push_back(std::move(lower));
  }
  return c;
}

PhasePortrait phase_portrait(double lambda, double omega, const PhaseBox& box, std::size_t n_trajectories,
                             std::size_t samples_per_branch) {
  PhasePortrait pp;
  pp.lambda = lambda;
  pp.omega = omega;
  const RegimeReport regime = classify(lambda, omega);
  for (double mu : regime.stationary_mu)
    if (mu >= box.mu_min && mu <= box.mu_max) pp.stationary_mu.push_back(mu);

  for (double mu : pp.stationary_mu) pp.curves.push_back(level_curve(lambda, omega, mu, 0.0, box, samples_per_branch));

  const std::size_t on_axis = (n_trajectories + 1) / 2;
  const std::size_t vertical = n_trajectories - on_axis;
  for (std::size_t k = 0; k < on_axis; ++k) {
    const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(on_axis);
    const double mu = box.mu_min + u * (box.mu_max - box.mu_min);
    pp.curves.push_back(level_curve(lambda, omega, mu, 0.0, box, samples_per_branch));
  }
  const double mu_line = pp.stationary_mu.empty() ? 0.5 * (box.mu_min + box.mu_max) : pp.stationary_mu.front();
  for (std::size_t k = 0; k < vertical; ++k) {
    const double u = (static_cast<double>(k) + 0.5) / static_cast<double>(vertical);
    const double v = box.mudot_min + u * (box.mudot_max - box.mudot_min);
    pp.curves.push_back(level_curve(lambda, omega, mu_line, v, box, samples_per_branch));
  }
  return pp;
}

}  // namespace lenssplit
