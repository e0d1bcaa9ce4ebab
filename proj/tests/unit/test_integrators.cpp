#include <cmath>
#include <limits>

#include "doctest.h"
#include "lenssplit/gaussian_oracle.hpp"
#include "lenssplit/integrators.hpp"

using namespace lenssplit;

namespace {

PhysParams log_params(double lambda, double omega) {
  PhysParams p;
  p.kind = NonlinearityKind::Logarithmic;
  p.lambda = lambda;
  p.omega = omega;
  p.epsilon = 1e-15;
  return p;
}

SolverConfig base_config(const PhysParams& p, double a, double b, std::size_t M, double T, std::size_t N,
                         Stepper stepper = Stepper::Strang, TimeGridKind kind = TimeGridKind::UniformT) {
  SolverConfig cfg;
  cfg.params = p;
  cfg.spatial = SpatialGrid::create(a, b, M);
  cfg.grids = TimeGrids::make(T, N, p.omega, kind);
  cfg.stepper = stepper;
  return cfg;
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a.values[j] - b.values[j]));
  return m;
}

const double kAlpha = 3.0 - std::sqrt(5.0);

}  // namespace

TEST_SUITE("integrators") {

TEST_CASE("empty run returns the data") {
  auto cfg = base_config(log_params(-3.0, 2.0), -10, 10, 256, 1.0, 0);
  const auto u0 = sample(cfg.spatial, [](double y) { return cplx(std::exp(-y * y)); });
  const auto r = run(cfg, u0);
  CHECK(r.final.n == 0);
  CHECK(r.final.field.values == u0.values);
}

TEST_CASE("without nonlinearity a step is the free flow") {
  auto cfg = base_config(log_params(0.0, 2.0), -10, 10, 256, 1.0, 10);
  const auto u0 = sample(cfg.spatial, [](double y) { return cplx(std::exp(-y * y), y * std::exp(-y * y)); });
  SolverState st{0, 0.0, 0.0, u0};
  for (std::size_t n = 0; n < 3; ++n) {
    const auto lie = step_lie(st, cfg);
    const auto strang = step_strang(st, cfg);
    const auto exact = linear_flow(st.field, cfg.grids.delta()[n]);
    CHECK(max_diff(lie.field, exact) < 1e-14);
    CHECK(max_diff(strang.field, exact) < 1e-14);
    CHECK(lie.n == n + 1);
    CHECK(lie.t == cfg.grids.t()[n + 1]);
    CHECK(lie.s == cfg.grids.s()[n + 1]);
    st = lie;
  }
}

TEST_CASE("one step keeps the mass") {
  auto cfg = base_config(log_params(-3.0, 2.0), -10, 10, 1024, 2.5, 100);
  const auto u0 = sample(cfg.spatial, [](double y) { return cplx(2.0 * std::exp(-kAlpha * y * y / 2)); });
  const SolverState st{0, 0.0, 0.0, u0};
  CHECK(std::abs(l2_norm(step_lie(st, cfg).field) - l2_norm(u0)) < 1e-12);
  CHECK(std::abs(l2_norm(step_strang(st, cfg).field) - l2_norm(u0)) < 1e-12);
}

TEST_CASE("mass conservation and determinism over a long run") {
  auto cfg = base_config(log_params(-1.0, 1.0), -16, 16, 256, 2.0, 4000);
  cfg.observers = {Observable::Mass, Observable::H1, Observable::Weighted};
  cfg.record_every = 500;
  const auto u0 = sample(cfg.spatial, [](double y) { return cplx(1.0 / std::cosh(y * y / 2), 0.1 * y); });
  const auto a = run(cfg, u0);
  const auto b = run(cfg, u0);
  const auto& mass = a.record.series.at("mass");
  CHECK(mass.size() == 9);
  for (const auto& row : mass) CHECK(std::abs(row.value - mass.front().value) <= 1e-10 * mass.front().value);
  CHECK(a.final.field.values == b.final.field.values);
  for (const auto& [name, rows] : a.record.series) {
    const auto& other = b.record.series.at(name);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].value == other[i].value);
  }
  CHECK(a.record.find_meta("max_relative_mass_drift") != nullptr);
}

TEST_CASE("Strang step is symmetric for a frozen power coefficient") {
  auto g = SpatialGrid::create(-10, 10, 256);
  PhysParams p;
  p.kind = NonlinearityKind::Power;
  p.lambda = -1.0;
  p.omega = 2.0;
  p.sigma = 2.0;
  const auto z = sample(g, [](double y) { return cplx(1.5 * std::exp(-y * y), 0.5 * y * std::exp(-y * y)); });
  const double t0 = 0.3, t1 = 0.35, delta = s_of_t(t1, 2.0) - s_of_t(t0, 2.0);
  const auto fwd = linear_flow(power_nonlinear_flow(linear_flow(z, delta / 2), t0, t1, p), delta / 2);
  const auto back = linear_flow(power_nonlinear_flow(linear_flow(fwd, -delta / 2), t1, t0, p), -delta / 2);
  CHECK(max_diff(back, z) < 1e-10);
}

TEST_CASE("scaling covariance in the log case") {
  const double lambda = -1.0, k = 2.0;
  auto cfg = base_config(log_params(lambda, 1.0), -12, 12, 512, 1.0, 200);
  const auto u0 = sample(cfg.spatial, [](double y) { return cplx(1.0 / std::cosh(y * y / 2)); });
  auto ku0 = u0;
  for (auto& v : ku0.values) v *= k;
  for (auto kind : {TimeGridKind::UniformT, TimeGridKind::UniformS}) {
    cfg.grids = TimeGrids::make(1.0, 200, 1.0, kind);
    const auto a = run(cfg, u0).final;
    const auto b = run(cfg, ku0).final;
    const auto ua = reconstruct_u(a.field, a.t, cfg.params, true, cfg.spatial);
    const auto ub = reconstruct_u(b.field, b.t, cfg.params, true, cfg.spatial);
    const cplx factor = k * std::exp(cplx(0.0, -a.t * lambda * std::log(k * k)));
    SpectralField scaled = ua;
    for (auto& v : scaled.values) v *= factor;
    CHECK(l2_distance(ub, scaled) < 1e-6);
  }
}

TEST_CASE("J-norm identity") {
  auto cfg = base_config(log_params(-2.0, 1.0), -16, 16, 512, 1.0, 100);
  const auto u0 = sample(cfg.spatial, [](double y) { return cplx(std::exp(-y * y / 2), 0.5 * y * std::exp(-y * y)); });
  SolverState st{0, 0.0, 0.0, u0};
  for (std::size_t n = 0; n < cfg.grids.steps(); ++n) {
    st = step_strang(st, cfg);
    if ((n + 1) % 25) continue;
    const auto u = reconstruct_u(st.field, st.t, cfg.params, true, cfg.spatial);
    CHECK(std::abs(j_norm(u, st.t, cfg.params.omega) - h1_seminorm(st.field)) < 1e-6);
  }
}

TEST_CASE("solitary wave: orders on a short horizon") {
  const auto p = log_params(-3.0, 2.0);
  const auto state0 = gaussian_initial_state(2.0, kAlpha);
  for (auto [stepper, lo, hi] : {std::tuple{Stepper::Lie, 0.85, 1.15}, std::tuple{Stepper::Strang, 1.8, 2.2}}) {
    std::vector<double> errs;
    for (std::size_t N : {100, 200, 400}) {
      auto cfg = base_config(p, -10, 10, 1024, 1.0, N, stepper);
      cfg.observers = {Observable::Error};
      cfg.record_every = N;
      auto prop = std::make_shared<GaussianPropagator>(state0, p.lambda, p.omega, 1e-3);
      cfg.reference = [prop](double t, const GridPtr& g) { return exact_field(prop->advance_to(t), g); };
      const auto u0 = sample(cfg.spatial, [](double y) { return cplx(2.0 * std::exp(-kAlpha * y * y / 2)); });
      errs.push_back(run(cfg, u0).record.series.at("error").back().value);
    }
    const double order = std::log2(errs[1] / errs[2]);
    CAPTURE(to_string(stepper));
    CHECK(order > lo);
    CHECK(order < hi);
  }
}

TEST_CASE("configuration errors") {
  auto cfg = base_config(log_params(-3.0, 2.0), -10, 10, 64, 1.0, 10);
  const auto u0 = sample(cfg.spatial, [](double y) { return cplx(std::exp(-y * y)); });
  SUBCASE("error observable needs a reference") {
    cfg.observers = {Observable::Error};
    CHECK_THROWS_AS(run(cfg, u0), std::invalid_argument);
  }
  SUBCASE("snapshot times must be nodes") {
    const std::vector<double> times = {0.05};
    CHECK_THROWS_AS(run(cfg, u0, times), std::invalid_argument);
  }
  SUBCASE("snapshots at nodes are recorded in both spaces") {
    const std::vector<double> times = {0.0, 0.5, 1.0};
    const auto r = run(cfg, u0, times);
    CHECK(r.record.snapshots.size() == 6);
    CHECK(r.record.snapshots[2].n == 5);
  }
  SUBCASE("epsilon must be positive") {
    cfg.params.epsilon = 0.0;
    CHECK_THROWS_AS(run(cfg, u0), std::invalid_argument);
  }
  SUBCASE("non-finite values are a hard failure with the step index") {
    auto bad = u0;
    bad.values[7] = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
    try {
      run(cfg, bad);
      FAIL("expected NumericalFailure");
    } catch (const NumericalFailure& e) {
      CHECK(e.step() == 1);
    }
  }
}

TEST_CASE("gradient threshold stops the run") {
  PhysParams p;
  p.kind = NonlinearityKind::Power;
  p.lambda = -1.0;
  p.omega = 2.0;
  p.sigma = 3.0;
  auto cfg = base_config(p, -8, 8, 2048, 0.05, 250);
  cfg.blowup_factor = 3.0;
  cfg.observers = {Observable::H1};
  const auto u0 = sample(cfg.spatial, [](double y) { return cplx(2.0 * std::exp(-y * y)); });
  const auto r = run(cfg, u0);
  REQUIRE(r.record.blowup.has_value());
  const auto& b = *r.record.blowup;
  CHECK(b.t_hi > b.t_lo);
  CHECK(b.gradient > b.threshold);
  CHECK(b.threshold == doctest::Approx(3.0 * h1_seminorm(u0)));
  CHECK(r.final.n == b.n + 1);
  CHECK(r.final.n < cfg.grids.steps());
}

}
