// End-to-end checks. One PASS/FAIL line per criterion; the exit status is
// nonzero when any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lenssplit/flows.hpp"
#include "lenssplit/gaussian_oracle.hpp"
#include "lenssplit/harness/config.hpp"
#include "lenssplit/harness/experiment.hpp"
#include "lenssplit/harness/presets.hpp"
#include "lenssplit/harness/studies.hpp"
#include "lenssplit/integrators.hpp"
#include "lenssplit/simd/kernels.hpp"

using namespace lenssplit;
using namespace lenssplit::harness;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void guarded(const std::string& name, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(false, name, std::string("exception: ") + e.what());
  }
}

RunResult simulate(const ExperimentSpec& spec) {
  SolverConfig cfg = solver_config(spec, spec.N, spec.method);
  return run(cfg, sample(cfg.spatial, [&](double y) { return spec.initial(y); }));
}

PhysParams log_params(double lambda, double omega) {
  PhysParams p;
  p.lambda = lambda;
  p.omega = omega;
  p.epsilon = 1e-15;
  return p;
}

SpectralField random_field(GridPtr g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  SpectralField f(g);
  for (auto& v : f.values) v = cplx(d(rng), d(rng));
  return f;
}

void solitary_wave() {
  const auto spec = build_spec(preset_config("example1-strangI"));
  const double err = final_error(spec, spec.N, spec.method);
  report(err <= 1e-4, "solitary wave, strangI N=10000", fmt("L2 error at T=2.5: %.4e (limit 1e-4)", err));
}

void convergence_orders() {
  const auto spec = build_spec(preset_config("example1-convergence"));
  const auto res = convergence_study(spec, spec.workers);
  for (const auto& o : res.orders) {
    const bool strang = o.method.stepper == Stepper::Strang;
    const double lo = strang ? 1.8 : 0.85, hi = strang ? 2.2 : 1.15;
    std::string errs;
    for (const auto& r : res.rows)
      if (r.method == o.method) errs += fmt(" %.3e", r.error);
    if (!o.fit) {
      report(false, "convergence order " + o.method.name(), o.note);
      continue;
    }
    const double p = o.fit->slope;
    report(p >= lo && p <= hi, "convergence order " + o.method.name(),
           fmt("fitted %.4f, target [%.2f, %.2f]; errors%s", p, lo, hi, errs.c_str()));
  }
}

void error_growth() {
  const auto spec = build_spec(preset_config("example1-error-growth"));
  const auto series = error_growth_study(spec, spec.workers);
  const GrowthSeries* s1 = nullptr;
  const GrowthSeries* s2 = nullptr;
  for (const auto& s : series) {
    if (s.method.name() == "strangI") s1 = &s;
    if (s.method.name() == "strangII") s2 = &s;
  }
  if (!s1 || !s2) {
    report(false, "error growth, N=25000", "missing series");
    return;
  }
  const double e1 = s1->rows.back().value, e2 = s2->rows.back().value;
  const bool ok = s1->linear.correlation >= 0.99 && s2->log_linear.correlation >= 0.99 && e1 < e2;
  report(ok, "error growth, N=25000",
         fmt("strangI linear r=%.5f, strangII log-linear r=%.5f (need >= 0.99); final %.3e < %.3e", s1->linear.correlation,
             s2->log_linear.correlation, e1, e2));
}

void blowup() {
  const auto spec = build_spec(preset_config("example6-sigma3"));
  const auto g = lens_grid(spec);
  const auto v = virial_blowup_check(sample(g, [&](double x) { return spec.initial(x); }), spec.params);
  const double lhs = 2.0 * std::sqrt(M_PI / 2.0) - 64.0 * std::sqrt(M_PI / 8.0);
  const double rhs = -2.0 * std::sqrt(M_PI / 2.0);
  const bool virial = v.holds && std::abs(v.lhs - lhs) <= 0.01 * std::abs(lhs) && std::abs(v.rhs - rhs) <= 0.01 * std::abs(rhs);
  report(virial, "virial criterion sigma=3",
         fmt("lhs %.4f (closed form %.4f), rhs %.4f (closed form %.4f), holds=%d", v.lhs, lhs, v.rhs, rhs, v.holds));

  const auto r3 = simulate(spec);
  if (r3.record.blowup) {
    const auto& b = *r3.record.blowup;
    report(b.t_lo >= 0.022 && b.t_hi <= 0.027, "blow-up time sigma=3",
           fmt("gradient threshold crossed in [%.5f, %.5f], target [0.022, 0.027]", b.t_lo, b.t_hi));
  } else {
    report(false, "blow-up time sigma=3", fmt("no blow-up flagged up to t=%.4f", r3.final.t));
  }

  const auto spec1 = build_spec(preset_config("example6-sigma1"));
  const auto r1 = simulate(spec1);
  report(!r1.record.blowup && r1.final.n == spec1.N && std::abs(r1.final.t - 5.0) < 1e-12, "no blow-up sigma=1",
         fmt("reached t=%.6f after %zu of %zu steps, flagged=%d", r1.final.t, r1.final.n, spec1.N,
             r1.record.blowup.has_value()));
}

void gaussian_oracle() {
  double stat = 0.0;
  for (double mu : classify(-3.0, 2.0).stationary_mu) stat = std::max(stat, std::abs(mu_rhs(mu, OdeParams{-3.0, 2.0, 0.0})));
  stat = std::max(stat, std::abs(mu_rhs(1.0 / std::sqrt(2.0), OdeParams{-2.0, 2.0, 0.0})));
  const bool two = classify(-3.0, 2.0).stationary_mu.size() == 2;

  GaussianState init;
  init.mu = 1.0 / std::sqrt(2.0);
  init.bmod = 2.0;
  const auto params = OdeParams::from_state(-3.0, 2.0, init.mu, 0.0);
  double drift = 0.0;
  for (const auto& smp : integrate_gaussian(init, params, 5.0, 1e-4))
    drift = std::max(drift, std::abs(first_integral(smp.state.mu, smp.state.mudot, -3.0, 2.0) - params.C0));

  // i u_t + u_xx/2 + (w^2 x^2/2) u - lambda u ln|u|^2 with u_t = (b'/b - a' x^2/2) u
  init.mudot = 0.3;
  const double lambda = -3.0, omega = 2.0;
  auto g = SpatialGrid::create(-8, 8, 512);
  GaussianPropagator prop(init, lambda, omega, 1e-4);
  double residual = 0.0;
  for (double t : {0.0, 0.4, 1.3}) {
    const auto st = prop.advance_to(t);
    const auto u = exact_field(st, g);
    const auto uxx = derivative(derivative(u));
    const double mu = st.mu, md = st.mudot, mdd = mu_rhs(mu, OdeParams{lambda, omega, 0.0});
    const cplx bdot(-md / (2.0 * mu), -(0.5 / (mu * mu) + lambda * std::log(st.bmod * st.bmod)));
    const cplx adot(-2.0 * md / (mu * mu * mu), -(mdd / mu - md * md / (mu * mu)));
    SpectralField r(g);
    for (std::size_t j = 0; j < g->size(); ++j) {
      const double x = g->points()[j];
      const double m = std::abs(u.values[j]);
      const cplx nl = m > 0.0 ? lambda * u.values[j] * std::log(m * m) : cplx(0.0);
      r.values[j] = cplx(0.0, 1.0) * (bdot - 0.5 * adot * x * x) * u.values[j] + 0.5 * uxx.values[j] +
                    0.5 * omega * omega * x * x * u.values[j] - nl;
    }
    residual = std::max(residual, l2_norm(r));
  }
  report(two && stat <= 1e-12 && drift <= 1e-8 && residual <= 1e-5, "Gaussian oracle invariants",
         fmt("stationary residual %.2e, energy drift %.2e, PDE residual %.2e", stat, drift, residual));
}

void structure() {
  std::vector<std::string> bad;
  std::string detail;

  {  // mass over 25000 steps on the solitary setup
    auto cfg_text = preset_config("example1-error-growth");
    cfg_text.set("grid", "h", "0.01953125");
    cfg_text.set("output", "reference", "none");
    cfg_text.set("output", "observables", "mass");
    cfg_text.set("output", "record_every", "250");
    const auto spec = build_spec(cfg_text);
    const auto res = simulate(spec);
    const auto& rows = res.record.series.at("mass");
    double drift = 0.0;
    for (const auto& row : rows) drift = std::max(drift, std::abs(row.value - rows.front().value) / rows.front().value);
    detail += fmt("mass %.1e/%zu steps", drift, res.final.n);
    if (!(drift <= 1e-10 && res.final.n == 25000)) bad.push_back("mass");
  }

  auto g = SpatialGrid::create(-10, 10, 1024);
  const auto z = random_field(g, 7);
  {
    double worst = 0.0;
    const auto p = log_params(-3.0, 2.0);
    const auto a = log_nonlinear_flow(z, 0.1, 0.2, p);
    PhysParams pp;
    pp.kind = NonlinearityKind::Power;
    pp.lambda = -1.0;
    pp.omega = 2.0;
    pp.sigma = 3.0;
    const auto b = power_nonlinear_flow(z, 0.1, 0.7, pp);
    for (std::size_t j = 0; j < z.size(); ++j) {
      const double m = std::abs(z.values[j]);
      worst = std::max({worst, std::abs(std::abs(a.values[j]) - m) / m, std::abs(std::abs(b.values[j]) - m) / m});
    }
    detail += fmt(", modulus %.1e", worst);
    if (!(worst <= 1e-15)) bad.push_back("modulus");
  }
  {
    const auto ab = linear_flow(linear_flow(z, 0.13), 0.21);
    const auto direct = linear_flow(z, 0.34);
    const double rel = l2_distance(ab, direct) / l2_norm(z);
    detail += fmt(", group %.1e", rel);
    if (!(rel <= 1e-12)) bad.push_back("group");
  }
  {
    const double lambda = -1.0, k = 2.0;
    SolverConfig cfg;
    cfg.params = log_params(lambda, 1.0);
    cfg.spatial = SpatialGrid::create(-12, 12, 512);
    const auto u0 = sample(cfg.spatial, [](double y) { return cplx(1.0 / std::cosh(y * y / 2)); });
    auto ku0 = u0;
    for (auto& v : ku0.values) v *= k;
    double worst = 0.0;
    for (auto kind : {TimeGridKind::UniformT, TimeGridKind::UniformS}) {
      cfg.grids = TimeGrids::make(1.0, 200, 1.0, kind);
      const auto a = run(cfg, u0).final;
      const auto b = run(cfg, ku0).final;
      const auto ua = reconstruct_u(a.field, a.t, cfg.params, true, cfg.spatial);
      const auto ub = reconstruct_u(b.field, b.t, cfg.params, true, cfg.spatial);
      SpectralField scaled = ua;
      const cplx factor = k * std::exp(cplx(0.0, -a.t * lambda * std::log(k * k)));
      for (auto& v : scaled.values) v *= factor;
      worst = std::max(worst, l2_distance(ub, scaled));
    }
    detail += fmt(", scaling %.1e", worst);
    if (!(worst <= 1e-6)) bad.push_back("scaling");
  }
  {
    SolverConfig cfg;
    cfg.params = log_params(-2.0, 1.0);
    cfg.spatial = SpatialGrid::create(-16, 16, 512);
    cfg.grids = TimeGrids::make(1.0, 100, 1.0, TimeGridKind::UniformT);
    SolverState st{0, 0.0, 0.0, sample(cfg.spatial, [](double y) { return cplx(std::exp(-y * y / 2), 0.5 * y * std::exp(-y * y)); })};
    double worst = 0.0;
    for (std::size_t n = 0; n < cfg.grids.steps(); ++n) {
      st = step_strang(st, cfg);
      const auto u = reconstruct_u(st.field, st.t, cfg.params, true, cfg.spatial);
      worst = std::max(worst, std::abs(j_norm(u, st.t, 1.0) - h1_seminorm(st.field)));
    }
    detail += fmt(", J-norm %.1e", worst);
    if (!(worst <= 1e-6)) bad.push_back("J-norm");
  }
  {
    double worst = 0.0;
    for (auto kind : {TimeGridKind::UniformT, TimeGridKind::UniformS}) {
      const auto grids = TimeGrids::make(2.5, 25000, 2.0, kind);
      double sum = 0.0;
      for (double d : grids.delta()) sum += d;
      worst = std::max(worst, std::abs(sum - grids.s().back()) / grids.s().back());
    }
    detail += fmt(", telescoping %.1e", worst);
    if (!(worst <= 1e-12)) bad.push_back("telescoping");
  }
  {
    const auto f = random_field(g, 11);
    std::vector<double> nodes(g->points().begin(), g->points().end());
    const auto direct = eval_offgrid(f, nodes);
    const auto fast = eval_uniform(f, g->points()[0], g->spacing(), g->size());
    double worst = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
      worst = std::max({worst, std::abs(direct[j] - f.values[j]), std::abs(fast[j] - f.values[j])});
    detail += fmt(", nodes %.1e", worst);
    if (!(worst <= 1e-12)) bad.push_back("nodes");
  }
  std::string which;
  for (const auto& b : bad) which += " " + b;
  report(bad.empty(), "structure invariants", detail + (bad.empty() ? "" : "; failed:" + which));
}

void theory_rate() {
  const auto spec = build_spec(preset_config("theory-rate"));
  const auto res = convergence_study(spec, spec.workers);
  const auto& o = res.orders.front();
  if (!o.fit) {
    report(false, "cut-off rate, power sigma=1", o.note);
    return;
  }
  report(o.fit->slope >= 0.5, "cut-off rate, power sigma=1",
         fmt("fitted order %.4f (r=%.4f), need >= 0.5", o.fit->slope, o.fit->correlation));
}

void epsilon_insensitivity() {
  const auto spec = build_spec(preset_config("example1-epsilon"));
  const auto rows = epsilon_sweep(spec, spec.workers);
  double lo = 1e300, hi = -1e300;
  std::string list;
  for (const auto& r : rows) {
    lo = std::min(lo, r.error);
    hi = std::max(hi, r.error);
    list += fmt(" %.0e:%.4e", r.epsilon, r.error);
  }
  report(rows.size() == 3 && hi - lo <= 1e-6, "epsilon insensitivity",
         fmt("spread %.2e (limit 1e-6);%s", hi - lo, list.c_str()));
}

}  // namespace

int main() {
  std::printf("kernels: %s\n", simd::active_kernels().name);
  const auto start = std::chrono::steady_clock::now();
  guarded("solitary wave, strangI N=10000", solitary_wave);
  guarded("convergence orders", convergence_orders);
  guarded("error growth, N=25000", error_growth);
  guarded("blow-up", blowup);
  guarded("Gaussian oracle invariants", gaussian_oracle);
  guarded("structure invariants", structure);
  guarded("cut-off rate, power sigma=1", theory_rate);
  guarded("epsilon insensitivity", epsilon_insensitivity);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d failing, %.0f s\n", failures, secs);
  return failures ? 1 : 0;
}
