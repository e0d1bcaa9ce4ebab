#include "lenssplit/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "lenssplit/simd/kernels.hpp"

namespace lenssplit::harness {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment", {"name", "reproduces", "description"}},
      {"equation", {"kind", "lambda", "omega", "sigma", "epsilon", "initial"}},
      {"grid", {"a", "b", "points", "h"}},
      {"physical", {"a", "b", "points", "h"}},
      {"time", {"t", "n", "tau"}},
      {"scheme", {"method", "cutoff", "blowup_factor", "gauge_refine", "sech_refine"}},
      {"output", {"observables", "record_every", "snapshot_count", "snapshot_points", "reference", "reference_factor"}},
      {"study", {"n_list", "methods", "error_samples", "workers", "epsilons"}},
      {"portrait", {"mu_min", "mu_max", "mudot_min", "mudot_max", "trajectories", "samples"}},
  };
  return keys;
}

void check_schema(const Config& config) {
  for (const auto& [section, entries] : config.sections()) {
    const auto known = schema().find(section);
    if (known == schema().end()) {
      const std::size_t line = entries.empty() ? 0 : entries.begin()->second.line;
      throw ConfigError("unknown section [" + section + "]", line);
    }
    for (const auto& [key, value] : entries)
      if (!known->second.count(key)) throw ConfigError("unknown key '" + key + "' in [" + section + "]", value.line);
  }
}

std::size_t line_of(const Config& c, const std::string& section, const std::string& key) {
  const auto* v = c.find(section, key);
  return v ? v->line : 0;
}

Domain read_domain(const Config& c, const std::string& section) {
  Domain d;
  const auto a = c.number(section, "a"), b = c.number(section, "b");
  if (!a || !b) throw ConfigError("[" + section + "] needs a and b", line_of(c, section, a ? "a" : "b"));
  d.a = *a;
  d.b = *b;
  if (!(d.b > d.a)) throw ConfigError("[" + section + "] needs a < b", line_of(c, section, "b"));
  const bool has_points = c.has(section, "points"), has_h = c.has(section, "h");
  if (has_points == has_h) throw ConfigError("[" + section + "] needs exactly one of points or h", line_of(c, section, "a"));
  if (has_points) {
    d.points = c.count(section, "points", 0);
  } else {
    const double h = c.number(section, "h", 0.0);
    if (!(h > 0.0)) throw ConfigError("[" + section + "] h must be positive", line_of(c, section, "h"));
    const double m = (d.b - d.a) / h;
    if (std::abs(m - std::round(m)) > 1e-9 * m)
      throw ConfigError("[" + section + "] h does not divide b - a", line_of(c, section, "h"));
    d.points = static_cast<std::size_t>(std::llround(m));
  }
  if (d.points < 4 || d.points % 2)
    throw ConfigError("[" + section + "] point count must be even and at least 4", line_of(c, section, has_h ? "h" : "points"));
  return d;
}

Observable parse_observable(const std::string& name, std::size_t line) {
  if (name == "mass") return Observable::Mass;
  if (name == "h1") return Observable::H1;
  if (name == "weighted") return Observable::Weighted;
  if (name == "error") return Observable::Error;
  throw ConfigError("unknown observable '" + name + "'", line);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string Method::name() const {
  return std::string(stepper == Stepper::Lie ? "lie" : "strang") + (grid == TimeGridKind::UniformT ? "I" : "II");
}

Method Method::parse(const std::string& name, std::size_t line) {
  for (Stepper st : {Stepper::Lie, Stepper::Strang})
    for (TimeGridKind g : {TimeGridKind::UniformT, TimeGridKind::UniformS}) {
      Method m{st, g};
      if (m.name() == name) return m;
    }
  throw ConfigError("unknown method '" + name + "' (expected lieI, lieII, strangI or strangII)", line);
}

std::string to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::None: return "none";
    case ReferenceKind::Gaussian: return "gaussian";
    case ReferenceKind::Fine: return "fine";
    case ReferenceKind::Linear: return "linear";
  }
  return "unknown";
}

ExperimentSpec build_spec(const Config& c) {
  check_schema(c);
  ExperimentSpec spec;
  spec.config = c;
  spec.name = c.text("experiment", "name", "unnamed");
  spec.reproduces = c.text("experiment", "reproduces", "");
  spec.description = c.text("experiment", "description", "");

  // [equation]
  const std::string kind = c.text("equation", "kind", "log");
  if (kind == "log") {
    spec.params.kind = NonlinearityKind::Logarithmic;
  } else if (kind == "power") {
    spec.params.kind = NonlinearityKind::Power;
  } else {
    throw ConfigError("equation.kind must be log or power", line_of(c, "equation", "kind"));
  }
  spec.params.lambda = c.number("equation", "lambda", 0.0);
  spec.params.omega = c.number("equation", "omega", 1.0);
  spec.params.sigma = c.number("equation", "sigma", 1.0);
  spec.params.epsilon = c.number("equation", "epsilon", 1e-15);
  if (!(spec.params.omega > 0.0)) throw ConfigError("equation.omega must be positive", line_of(c, "equation", "omega"));
  if (spec.params.kind == NonlinearityKind::Power && !(spec.params.sigma > 0.0))
    throw ConfigError("equation.sigma must be positive", line_of(c, "equation", "sigma"));
  if (spec.params.kind == NonlinearityKind::Logarithmic && !(spec.params.epsilon > 0.0) && spec.params.lambda != 0.0)
    throw ConfigError("equation.epsilon must be positive", line_of(c, "equation", "epsilon"));
  if (const auto* init = c.find("equation", "initial")) {
    spec.initial_text = init->text;
    spec.initial = InitialData::parse(init->text, init->line);
  }

  // [grid], [physical]
  if (c.sections().count("grid")) spec.lens = read_domain(c, "grid");
  if (c.sections().count("physical")) {
    if (spec.lens.points == 0) throw ConfigError("[physical] needs a [grid] section", line_of(c, "physical", "a"));
    spec.physical = read_domain(c, "physical");
    // Reconstruction samples the lens field at x / cosh(omega t), which stays
    // inside [a, b] for all t only when the physical window does and holds 0.
    const Domain& p = *spec.physical;
    if (p.a < spec.lens.a || p.b > spec.lens.b || p.a > 0.0 || p.b <= 0.0)
      throw ConfigError("physical domain must contain 0 and lie inside the grid domain", line_of(c, "physical", "a"));
  } else if (spec.lens.points && (spec.lens.a > 0.0 || spec.lens.b <= 0.0)) {
    throw ConfigError("grid domain must contain 0", line_of(c, "grid", "a"));
  }

  // [time]
  spec.T = c.number("time", "t", 1.0);
  if (!(spec.T > 0.0)) throw ConfigError("time.T must be positive", line_of(c, "time", "t"));
  // Lens time s = tanh(omega T)/omega must stay distinguishable from 1/omega.
  if (!(std::tanh(spec.params.omega * spec.T) < 1.0))
    throw ConfigError("omega * T too large: lens time reaches 1/omega in double precision", line_of(c, "time", "t"));
  const bool has_n = c.has("time", "n"), has_tau = c.has("time", "tau");
  if (has_n && has_tau) throw ConfigError("give time.N or time.tau, not both", line_of(c, "time", "tau"));
  if (has_tau) {
    const double tau = c.number("time", "tau", 0.0);
    if (!(tau > 0.0)) throw ConfigError("time.tau must be positive", line_of(c, "time", "tau"));
    const double n = spec.T / tau;
    if (std::abs(n - std::round(n)) > 1e-9 * n) throw ConfigError("time.tau does not divide T", line_of(c, "time", "tau"));
    spec.N = static_cast<std::size_t>(std::llround(n));
  } else {
    spec.N = c.count("time", "n", 1000);
  }
  if (spec.N == 0) throw ConfigError("time.N must be positive", line_of(c, "time", "n"));

  // [scheme]
  spec.method = Method::parse(c.text("scheme", "method", "strangI"), line_of(c, "scheme", "method"));
  spec.cutoff = c.flag("scheme", "cutoff", false);
  const std::string blow = c.text("scheme", "blowup_factor", "off");
  if (blow != "off") {
    spec.blowup_factor = parse_number(blow, line_of(c, "scheme", "blowup_factor"));
    if (!(*spec.blowup_factor > 1.0))
      throw ConfigError("scheme.blowup_factor must exceed 1", line_of(c, "scheme", "blowup_factor"));
  }
  spec.gauge_refine = c.count("scheme", "gauge_refine", 20);
  spec.sech_refine = c.count("scheme", "sech_refine", 20);
  if (spec.gauge_refine < 2 || spec.sech_refine < 2)
    throw ConfigError("quadrature refinement must be at least 2", line_of(c, "scheme", "gauge_refine"));

  // [output]
  for (const auto& name : c.list("output", "observables"))
    spec.observables.push_back(parse_observable(name, line_of(c, "output", "observables")));
  if (spec.observables.empty()) spec.observables = {Observable::Mass, Observable::H1};
  spec.record_every = c.count("output", "record_every", std::max<std::size_t>(1, spec.N / 100));
  if (spec.record_every == 0) throw ConfigError("output.record_every must be positive", line_of(c, "output", "record_every"));
  spec.snapshot_count = c.count("output", "snapshot_count", 0);
  spec.snapshot_points = c.count("output", "snapshot_points", 1024);
  if (spec.snapshot_points < 2) throw ConfigError("output.snapshot_points must be at least 2", line_of(c, "output", "snapshot_points"));
  const std::string ref = c.text("output", "reference", "none");
  const std::size_t ref_line = line_of(c, "output", "reference");
  if (ref == "none") {
    spec.reference = ReferenceKind::None;
  } else if (ref == "gaussian") {
    spec.reference = ReferenceKind::Gaussian;
    if (spec.params.kind != NonlinearityKind::Logarithmic || !spec.initial.gaussian())
      throw ConfigError("reference = gaussian needs the log equation and one centred gauss(...) term", ref_line);
  } else if (ref == "fine") {
    spec.reference = ReferenceKind::Fine;
  } else if (ref == "linear") {
    spec.reference = ReferenceKind::Linear;
    if (spec.params.lambda != 0.0) throw ConfigError("reference = linear needs lambda = 0", ref_line);
  } else {
    throw ConfigError("output.reference must be none, gaussian, fine or linear", ref_line);
  }
  spec.reference_factor = c.count("output", "reference_factor", 8);
  if (spec.reference_factor < 2) throw ConfigError("output.reference_factor must be at least 2", line_of(c, "output", "reference_factor"));
  const bool wants_error = std::find(spec.observables.begin(), spec.observables.end(), Observable::Error) != spec.observables.end();
  if (wants_error && spec.reference == ReferenceKind::None)
    throw ConfigError("the error observable needs output.reference", line_of(c, "output", "observables"));

  // [study]
  spec.n_list = c.counts("study", "n_list");
  for (auto n : spec.n_list)
    if (n == 0) throw ConfigError("study.n_list entries must be positive", line_of(c, "study", "n_list"));
  for (const auto& m : c.list("study", "methods")) spec.methods.push_back(Method::parse(m, line_of(c, "study", "methods")));
  if (spec.methods.empty()) spec.methods = {spec.method};
  spec.error_samples = c.count("study", "error_samples", 250);
  if (spec.error_samples == 0) throw ConfigError("study.error_samples must be positive", line_of(c, "study", "error_samples"));
  spec.workers = c.count("study", "workers", 1);
  if (spec.workers == 0) spec.workers = 1;
  spec.epsilons = c.numbers("study", "epsilons");

  // [portrait]
  spec.box.mu_min = c.number("portrait", "mu_min", 0.1);
  spec.box.mu_max = c.number("portrait", "mu_max", 3.0);
  spec.box.mudot_min = c.number("portrait", "mudot_min", -3.0);
  spec.box.mudot_max = c.number("portrait", "mudot_max", 3.0);
  if (!(spec.box.mu_min > 0.0) || !(spec.box.mu_max > spec.box.mu_min) || !(spec.box.mudot_max > spec.box.mudot_min))
    throw ConfigError("portrait box needs 0 < mu_min < mu_max and mudot_min < mudot_max", line_of(c, "portrait", "mu_min"));
  spec.trajectories = c.count("portrait", "trajectories", 12);
  spec.samples = c.count("portrait", "samples", 400);
  if (spec.samples < 2) throw ConfigError("portrait.samples must be at least 2", line_of(c, "portrait", "samples"));
  return spec;
}

void require_field_setup(const ExperimentSpec& spec) {
  if (spec.lens.points == 0) throw ConfigError("this command needs a [grid] section");
  if (spec.initial.terms.empty()) throw ConfigError("this command needs equation.initial");
}

GridPtr lens_grid(const ExperimentSpec& spec) { return SpatialGrid::create(spec.lens.a, spec.lens.b, spec.lens.points); }

GridPtr physical_grid(const ExperimentSpec& spec) {
  if (!spec.physical) return nullptr;
  return SpatialGrid::create(spec.physical->a, spec.physical->b, spec.physical->points);
}

SolverConfig solver_config(const ExperimentSpec& spec, std::size_t N, const Method& method) {
  SolverConfig cfg;
  cfg.params = spec.params;
  cfg.grids = TimeGrids::make(spec.T, N, spec.params.omega, method.grid);
  cfg.spatial = lens_grid(spec);
  cfg.xgrid = physical_grid(spec);
  cfg.stepper = method.stepper;
  if (spec.cutoff) cfg.cutoff = CutoffSpec{spec.T / static_cast<double>(N), raised_cosine_cutoff};
  cfg.observers = spec.observables;
  cfg.record_every = spec.record_every;
  cfg.blowup_factor = spec.blowup_factor;
  cfg.gauge_refine = spec.gauge_refine;
  cfg.sech_refine = spec.sech_refine;
  return cfg;
}

ReferenceSolution make_reference(const ExperimentSpec& spec, std::size_t N, const Method& method,
                                 const std::vector<double>& times) {
  switch (spec.reference) {
    case ReferenceKind::None: return {};
    case ReferenceKind::Gaussian: {
      const double dt = spec.T / static_cast<double>(N) / 10.0;
      auto prop = std::make_shared<GaussianPropagator>(*spec.initial.gaussian(), spec.params.lambda, spec.params.omega, dt);
      return [prop](double t, const GridPtr& xgrid) { return exact_field(prop->advance_to(t), xgrid); };
    }
    case ReferenceKind::Linear: {
      auto kappa0 = std::make_shared<SpectralField>(sample(lens_grid(spec), [&](double y) { return spec.initial(y); }));
      const PhysParams params = spec.params;
      return [kappa0, params](double t, const GridPtr& xgrid) {
        const SpectralField kappa = linear_flow(*kappa0, s_of_t(t, params.omega));
        return reconstruct_u(kappa, t, params, false, xgrid);
      };
    }
    case ReferenceKind::Fine: {
      SolverConfig cfg = solver_config(spec, N * spec.reference_factor, method);
      cfg.observers.clear();
      cfg.blowup_factor.reset();
      const SpectralField u0 = sample(cfg.spatial, [&](double y) { return spec.initial(y); });
      RunResult fine = run(cfg, u0, times);
      auto table = std::make_shared<std::vector<std::pair<double, SpectralField>>>();
      for (auto& snap : fine.record.snapshots) {
        if (snap.space != Snapshot::Space::Physical) continue;
        table->emplace_back(snap.t, SpectralField{cfg.physical_grid(), std::move(snap.values)});
      }
      const double tol = 1e-9 * std::max(1.0, spec.T);
      return [table, tol](double t, const GridPtr& xgrid) {
        for (const auto& [time, field] : *table)
          if (std::abs(time - t) <= tol) {
            if (!field.grid->same_as(*xgrid)) throw std::logic_error("fine reference: grid mismatch");
            return field;
          }
        throw std::logic_error("fine reference: no reference at the requested time");
      };
    }
  }
  return {};
}

std::vector<double> snapshot_times(const ExperimentSpec& spec, const TimeGrids& grids) {
  std::vector<double> out;
  if (spec.snapshot_count == 0) return out;
  const std::size_t N = grids.steps();
  std::size_t last = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i <= spec.snapshot_count; ++i) {
    const auto n = static_cast<std::size_t>(std::llround(static_cast<double>(i) * static_cast<double>(N) /
                                                         static_cast<double>(spec.snapshot_count)));
    if (n != last) out.push_back(grids.t()[n]);
    last = n;
  }
  return out;
}

void describe(const ExperimentSpec& spec, ExperimentRecord& record) {
  record.add_meta("experiment", spec.name);
  if (!spec.reproduces.empty()) record.add_meta("reproduces", spec.reproduces);
  for (const auto& [section, entries] : spec.config.sections())
    for (const auto& [key, value] : entries) record.add_meta(section + "." + key, value.text);
  record.add_meta("resolved.M", std::to_string(spec.lens.points));
  record.add_meta("resolved.h", format_double((spec.lens.b - spec.lens.a) / static_cast<double>(spec.lens.points)));
  record.add_meta("resolved.N", std::to_string(spec.N));
  record.add_meta("resolved.tau", format_double(spec.T / static_cast<double>(spec.N)));
  record.add_meta("resolved.s_N", format_double(s_of_t(spec.T, spec.params.omega)));
  record.add_meta("kernels", simd::active_kernels().name);
}

}  // namespace lenssplit::harness
