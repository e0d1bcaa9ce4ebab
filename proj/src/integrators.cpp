#include "lenssplit/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lenssplit {

std::string to_string(Stepper stepper) { return stepper == Stepper::Lie ? "lie" : "strang"; }

std::string to_string(Observable obs) {
  switch (obs) {
    case Observable::Mass: return "mass";
    case Observable::H1: return "h1";
    case Observable::Weighted: return "weighted";
    case Observable::Error: return "error";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  params.validate();
  if (!spatial) throw std::invalid_argument("SolverConfig: missing spatial grid");
  if (grids.steps() == 0 && grids.t().empty()) throw std::invalid_argument("SolverConfig: time grids not built");
  if (std::abs(grids.omega() - params.omega) > 1e-15 * params.omega)
    throw std::invalid_argument("SolverConfig: time grids built for a different omega");
  if (grids.s().back() >= 1.0 / params.omega) throw std::invalid_argument("SolverConfig: s_N must stay below 1/omega");
  if (record_every == 0) throw std::invalid_argument("SolverConfig: record_every must be positive");
  if (params.kind == NonlinearityKind::Logarithmic && params.lambda != 0.0 && !(params.epsilon > 0.0))
    throw std::invalid_argument("SolverConfig: the logarithmic flow needs epsilon > 0");
  if (std::find(observers.begin(), observers.end(), Observable::Error) != observers.end() && !reference)
    throw std::invalid_argument("SolverConfig: error observable requested without a reference solution");
  if (blowup_factor && !(*blowup_factor > 1.0)) throw std::invalid_argument("SolverConfig: blowup factor must exceed 1");
  if (cutoff && !(cutoff->tau > 0.0)) throw std::invalid_argument("SolverConfig: cut-off tau must be positive");
}

namespace {

// Applies the sub-flows of one step in place; caches the free-flow symbol so
// constant steps (grid II) do not re-tabulate it.
class StepEngine {
 public:
  explicit StepEngine(const SolverConfig& cfg) : cfg_(cfg) {}

  void linear(std::span<cplx> values, double s) {
    if (s != cached_s_ || symbol_.empty()) {
      symbol_ = linear_symbol(*cfg_.spatial, s, cfg_.cutoff ? &*cfg_.cutoff : nullptr);
      cached_s_ = s;
    }
    apply_multiplier_inplace(*cfg_.spatial, values, symbol_);
  }

  void nonlinear(std::span<cplx> values, std::size_t n) {
    const PhysParams& p = cfg_.params;
    if (p.lambda == 0.0) return;
    if (p.kind == NonlinearityKind::Logarithmic) {
      const double s_n = cfg_.grids.s()[n];
      const double coef = -2.0 * p.lambda * log_flow_exponent(s_n, cfg_.grids.delta()[n], p.omega);
      apply_log_phase(values, coef, p.epsilon);
    } else {
      const auto t = cfg_.grids.t();
      const double q = sech_power_integral(t[n], t[n + 1], p.omega, p.sigma, cfg_.sech_refine);
      apply_power_phase(values, p.lambda * q, p.sigma);
    }
  }

  void step(SolverState& state) {
    const std::size_t n = state.n;
    if (n >= cfg_.grids.steps()) throw std::out_of_range("step: already at the final time");
    const double delta = cfg_.grids.delta()[n];
    auto values = std::span<cplx>(state.field.values);
    if (cfg_.stepper == Stepper::Lie) {
      nonlinear(values, n);
      linear(values, delta);
    } else {
      linear(values, 0.5 * delta);
      nonlinear(values, n);
      linear(values, 0.5 * delta);
    }
    state.n = n + 1;
    state.s = cfg_.grids.s()[n + 1];
    state.t = cfg_.grids.t()[n + 1];
    if (!state.field.all_finite()) {
      std::ostringstream msg;
      msg << "non-finite values after step " << state.n << " (t = " << state.t << ")";
      throw NumericalFailure(msg.str(), state.n);
    }
  }

 private:
  const SolverConfig& cfg_;
  std::vector<cplx> symbol_;
  double cached_s_ = 0.0;
};

SolverState step_with(SolverState state, const SolverConfig& cfg, Stepper stepper) {
  SolverConfig local = cfg;
  local.stepper = stepper;
  StepEngine engine(local);
  engine.step(state);
  return state;
}

std::size_t node_index(const TimeGrids& grids, double time) {
  const auto t = grids.t();
  const double tol = 1e-9 * std::max(1.0, grids.final_time());
  const auto it = std::lower_bound(t.begin(), t.end(), time - tol);
  if (it == t.end() || std::abs(*it - time) > tol) {
    std::ostringstream msg;
    msg << "snapshot time " << time << " is not a node of the time grid";
    throw std::invalid_argument(msg.str());
  }
  return static_cast<std::size_t>(it - t.begin());
}

}  // namespace

SolverState step_lie(SolverState state, const SolverConfig& cfg) { return step_with(std::move(state), cfg, Stepper::Lie); }

SolverState step_strang(SolverState state, const SolverConfig& cfg) {
  return step_with(std::move(state), cfg, Stepper::Strang);
}

RunResult run(const SolverConfig& cfg, const SpectralField& u0, std::span<const double> snapshot_times) {
  cfg.validate();
  if (!u0.grid->same_as(*cfg.spatial)) throw std::invalid_argument("run: initial field is not on the spatial grid");

  const TimeGrids& grids = cfg.grids;
  const std::size_t N = grids.steps();
  const bool log_model = cfg.params.kind == NonlinearityKind::Logarithmic;

  std::vector<char> snapshot_at(N + 1, 0);
  for (double time : snapshot_times) snapshot_at[node_index(grids, time)] = 1;

  const bool wants_error =
      std::find(cfg.observers.begin(), cfg.observers.end(), Observable::Error) != cfg.observers.end();
  std::vector<double> gauge;
  if (log_model && (wants_error || std::any_of(snapshot_at.begin(), snapshot_at.end(), [](char c) { return c; })))
    gauge = gauge_table(grids, cfg.gauge_refine);

  RunResult result;
  ExperimentRecord& rec = result.record;
  SolverState& state = result.final;
  state.n = 0;
  state.s = grids.s()[0];
  state.t = grids.t()[0];
  state.field = u0;

  const auto reconstruct = [&](const SolverState& st) {
    const std::optional<double> g = log_model ? std::optional<double>(gauge[st.n]) : std::nullopt;
    return reconstruct_u(st.field, st.t, cfg.params, log_model, cfg.physical_grid(), g);
  };

  const auto observe = [&](const SolverState& st) {
    for (Observable obs : cfg.observers) {
      double value = 0.0;
      switch (obs) {
        case Observable::Mass: value = l2_norm(st.field); break;
        case Observable::H1: value = h1_seminorm(st.field); break;
        case Observable::Weighted: value = norms(st.field).weighted_l2; break;
        case Observable::Error: {
          const SpectralField u = reconstruct(st);
          value = l2_distance(u, cfg.reference(st.t, cfg.physical_grid()));
          break;
        }
      }
      rec.series[to_string(obs)].push_back({st.n, st.t, st.s, value});
    }
  };

  const auto snapshot = [&](const SolverState& st) {
    Snapshot lens;
    lens.space = Snapshot::Space::Lens;
    lens.n = st.n;
    lens.t = st.t;
    lens.s = st.s;
    lens.coords.assign(st.field.grid->points().begin(), st.field.grid->points().end());
    lens.values = st.field.values;
    rec.snapshots.push_back(std::move(lens));

    const SpectralField u = reconstruct(st);
    Snapshot phys;
    phys.space = Snapshot::Space::Physical;
    phys.n = st.n;
    phys.t = st.t;
    phys.s = st.s;
    phys.coords.assign(u.grid->points().begin(), u.grid->points().end());
    phys.values = u.values;
    rec.snapshots.push_back(std::move(phys));
  };

  const double mass0 = l2_norm(state.field);
  double max_drift = 0.0;
  double grad_threshold = 0.0;
  if (cfg.blowup_factor) grad_threshold = *cfg.blowup_factor * h1_seminorm(state.field);

  observe(state);
  if (snapshot_at[0]) snapshot(state);

  StepEngine engine(cfg);
  while (state.n < N) {
    engine.step(state);
    const std::size_t n = state.n;

    if (mass0 > 0.0) max_drift = std::max(max_drift, std::abs(l2_norm(state.field) - mass0) / mass0);

    if (cfg.blowup_factor) {
      const double grad = h1_seminorm(state.field);
      if (grad > grad_threshold) {
        BlowUpMarker mark;
        mark.n = n - 1;
        mark.t_lo = grids.t()[n - 1];
        mark.t_hi = grids.t()[n];
        mark.s_lo = grids.s()[n - 1];
        mark.s_hi = grids.s()[n];
        mark.gradient = grad;
        mark.threshold = grad_threshold;
        rec.blowup = mark;
        observe(state);
        break;
      }
    }

    if (n % cfg.record_every == 0 || n == N) observe(state);
    if (snapshot_at[n]) snapshot(state);
  }

  std::ostringstream drift;
  drift.precision(3);
  drift << std::scientific << max_drift;
  rec.add_meta("max_relative_mass_drift", drift.str());
  return result;
}

}  // namespace lenssplit
