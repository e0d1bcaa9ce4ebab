// lenssplit: command-line driver for the lens-transform split-step solver.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure or
// blow-up abort, 3 I/O error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lenssplit/gaussian_oracle.hpp"
#include "lenssplit/harness/config.hpp"
#include "lenssplit/harness/csv.hpp"
#include "lenssplit/harness/experiment.hpp"
#include "lenssplit/harness/presets.hpp"
#include "lenssplit/harness/studies.hpp"
#include "lenssplit/integrators.hpp"
#include "lenssplit/model_transforms.hpp"
#include "lenssplit/simd/kernels.hpp"
#include "lenssplit/types.hpp"

using namespace lenssplit;
using namespace lenssplit::harness;

namespace {

constexpr int kOk = 0, kConfigError = 1, kNumericalError = 2, kIoError = 3;

struct Options {
  std::string config_path;
  std::string preset;
  std::string out = "out";
  std::optional<std::size_t> workers;
  std::optional<unsigned long long> seed;
};

ExperimentSpec load_spec(const Options& opt) {
  if (opt.config_path.empty() == opt.preset.empty()) throw ConfigError("give exactly one of --config or --preset");
  Config config = opt.preset.empty() ? Config::load(opt.config_path) : preset_config(opt.preset);
  return build_spec(config);
}

std::size_t workers_for(const Options& opt, const ExperimentSpec& spec) { return opt.workers.value_or(spec.workers); }

OutputDir open_output(const Options& opt, const ExperimentSpec& spec, const std::string& command) {
  OutputDir dir(opt.out);
  dir.add_meta("command", command);
  if (!opt.preset.empty()) dir.add_meta("preset", opt.preset);
  if (!opt.config_path.empty()) dir.add_meta("config_file", opt.config_path);
  if (opt.seed) dir.add_meta("seed", std::to_string(*opt.seed) + " (unused: all computations are deterministic)");
  ExperimentRecord rec;
  describe(spec, rec);
  dir.add_meta(rec);
  return dir;
}

std::string num(double v) { return format_double(v); }

int cmd_simulate(const Options& opt) {
  const ExperimentSpec spec = load_spec(opt);
  require_field_setup(spec);
  SolverConfig cfg = solver_config(spec, spec.N, spec.method);
  const auto times = snapshot_times(spec, cfg.grids);
  std::vector<double> ref_times;
  for (std::size_t n = 0; n <= spec.N; ++n)
    if (n % spec.record_every == 0 || n == spec.N) ref_times.push_back(cfg.grids.t()[n]);
  cfg.reference = make_reference(spec, spec.N, spec.method, ref_times);
  const SpectralField u0 = sample(cfg.spatial, [&](double y) { return spec.initial(y); });

  const auto start = std::chrono::steady_clock::now();
  RunResult result = run(cfg, u0, times);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  OutputDir dir = open_output(opt, spec, "simulate");
  dir.add_meta(result.record);
  dir.add_meta("wall_seconds", num(seconds));
  dir.add_meta("status", result.record.blowup ? "blow-up abort" : "completed");
  dir.write_record(result.record, spec.snapshot_points);
  dir.write_manifest();

  std::printf("%s: %s, N = %zu, M = %zu, %.2f s\n", spec.name.c_str(), spec.method.name().c_str(), spec.N,
              spec.lens.points, seconds);
  for (const auto& [name, rows] : result.record.series)
    if (!rows.empty()) std::printf("  %-8s at t = %-10g : %.6e\n", name.c_str(), rows.back().t, rows.back().value);
  if (result.record.blowup) {
    const auto& b = *result.record.blowup;
    std::printf("blow-up: gradient %.4e > %.4e between t = %.6g and t = %.6g\n", b.gradient, b.threshold, b.t_lo, b.t_hi);
    return kNumericalError;
  }
  return kOk;
}

int cmd_converge(const Options& opt) {
  const ExperimentSpec spec = load_spec(opt);
  require_field_setup(spec);
  const std::size_t workers = workers_for(opt, spec);
  const ConvergenceResult conv = convergence_study(spec, workers);

  OutputDir dir = open_output(opt, spec, "converge");
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : conv.rows) rows.push_back({r.method.name(), std::to_string(r.N), num(r.tau), num(r.error)});
  dir.write_table("converge.csv", {"method", "N", "tau", "error"}, rows);
  rows.clear();
  for (const auto& o : conv.orders) {
    if (o.fit)
      rows.push_back({o.method.name(), num(o.fit->slope), num(o.fit->intercept), num(o.fit->correlation),
                      std::to_string(o.fit->points)});
    else
      rows.push_back({o.method.name(), "nan", "nan", "nan", "0"});
  }
  dir.write_table("converge_orders.csv", {"method", "order", "intercept", "correlation", "points"}, rows);

  std::printf("%-9s %8s %12s %14s\n", "method", "N", "tau", "error");
  for (const auto& r : conv.rows) std::printf("%-9s %8zu %12.4e %14.6e\n", r.method.name().c_str(), r.N, r.tau, r.error);
  for (const auto& o : conv.orders) {
    if (o.fit)
      std::printf("order %-9s %.4f (r = %.5f)\n", o.method.name().c_str(), o.fit->slope, o.fit->correlation);
    else
      std::printf("order %-9s not fitted: %s\n", o.method.name().c_str(), o.note.c_str());
  }

  if (!spec.epsilons.empty()) {
    const auto sweep = epsilon_sweep(spec, workers);
    rows.clear();
    for (const auto& r : sweep) rows.push_back({num(r.epsilon), num(r.error)});
    dir.write_table("epsilon_sweep.csv", {"epsilon", "error"}, rows);
    for (const auto& r : sweep) std::printf("epsilon %-8g error %.10e\n", r.epsilon, r.error);
  }
  dir.write_manifest();
  return kOk;
}

int cmd_error_growth(const Options& opt) {
  const ExperimentSpec spec = load_spec(opt);
  require_field_setup(spec);
  const auto series = error_growth_study(spec, workers_for(opt, spec));

  OutputDir dir = open_output(opt, spec, "error-growth");
  std::vector<std::vector<std::string>> fits;
  for (const auto& s : series) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : s.rows) rows.push_back({std::to_string(r.n), num(r.t), num(r.s), num(r.value)});
    dir.write_table("error_growth_" + s.method.name() + ".csv", {"n", "t", "s", "error"}, rows);
    const std::string final_error = num(s.rows.back().value);
    fits.push_back({s.method.name(), "linear", num(s.linear.slope), num(s.linear.intercept), num(s.linear.correlation),
                    final_error});
    fits.push_back({s.method.name(), "log-linear", num(s.log_linear.slope), num(s.log_linear.intercept),
                    num(s.log_linear.correlation), final_error});
    std::printf("%-9s final error %.6e  linear r = %.5f  log-linear r = %.5f (rate %.4f)\n",
                s.method.name().c_str(), s.rows.back().value, s.linear.correlation, s.log_linear.correlation,
                s.log_linear.slope);
  }
  dir.write_table("error_growth_fit.csv", {"method", "model", "slope", "intercept", "correlation", "final_error"}, fits);
  dir.write_manifest();
  return kOk;
}

int cmd_phase_portrait(const Options& opt) {
  const ExperimentSpec spec = load_spec(opt);
  const auto& p = spec.params;
  const PhasePortrait portrait = phase_portrait(p.lambda, p.omega, spec.box, spec.trajectories, spec.samples);

  OutputDir dir = open_output(opt, spec, "phase-portrait");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t c = 0; c < portrait.curves.size(); ++c) {
    const auto& curve = portrait.curves[c];
    for (std::size_t b = 0; b < curve.branches.size(); ++b)
      for (const auto& pt : curve.branches[b])
        rows.push_back({std::to_string(c), std::to_string(b), num(pt[0]), num(pt[1]), num(curve.level),
                        curve.closed ? "1" : "0", curve.stationary ? "1" : "0"});
  }
  dir.write_table("portrait_curves.csv", {"curve", "branch", "mu", "mudot", "level", "closed", "stationary"}, rows);
  rows.clear();
  for (double mu : portrait.stationary_mu) rows.push_back({num(mu), "0", num(first_integral(mu, 0.0, p.lambda, p.omega))});
  dir.write_table("portrait_stationary.csv", {"mu", "mudot", "level"}, rows);
  dir.write_manifest();

  const RegimeReport report = classify(p.lambda, p.omega);
  std::printf("%s\n%zu level curves written\n", report.summary.c_str(), portrait.curves.size());
  return kOk;
}

int cmd_classify(const Options& opt) {
  const ExperimentSpec spec = load_spec(opt);
  const RegimeReport report = classify(spec.params.lambda, spec.params.omega);
  std::printf("regime: %s\n%s\n", to_string(report.regime).c_str(), report.summary.c_str());
  for (double mu : report.stationary_mu) std::printf("stationary mu = %.15g\n", mu);
  OutputDir dir = open_output(opt, spec, "classify");
  std::vector<std::vector<std::string>> rows;
  for (double mu : report.stationary_mu) rows.push_back({to_string(report.regime), num(mu)});
  if (rows.empty()) rows.push_back({to_string(report.regime), "nan"});
  dir.write_table("classify.csv", {"regime", "stationary_mu"}, rows);
  dir.write_manifest();
  return kOk;
}

int cmd_blowup_check(const Options& opt) {
  const ExperimentSpec spec = load_spec(opt);
  require_field_setup(spec);
  if (spec.params.kind != NonlinearityKind::Power) throw ConfigError("blowup-check needs equation.kind = power");
  const SpectralField u0 = sample(lens_grid(spec), [&](double x) { return spec.initial(x); });
  const VirialCheck check = virial_blowup_check(u0, spec.params);
  std::printf("lhs = %.10g\nrhs = %.10g\nblow-up criterion %s\n", check.lhs, check.rhs, check.holds ? "holds" : "does not hold");
  OutputDir dir = open_output(opt, spec, "blowup-check");
  dir.write_table("blowup_check.csv", {"lhs", "rhs", "holds"}, {{num(check.lhs), num(check.rhs), check.holds ? "1" : "0"}});
  dir.write_manifest();
  return kOk;
}

int cmd_list_presets() {
  for (const auto& p : presets()) std::printf("%-24s %-15s %s\n", p.name.c_str(), p.command.c_str(), p.summary.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-step spectral solver for Schrodinger equations with a repulsive harmonic potential"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* sub) {
    auto* cfg = sub->add_option("--config", opt.config_path, "configuration file");
    auto* pre = sub->add_option("--preset", opt.preset, "built-in preset (see list-presets)");
    cfg->excludes(pre);
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_option("--workers", opt.workers, "worker threads for studies")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "reserved; recorded in the manifest only");
  };

  int (*selected)(const Options&) = nullptr;
  const auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    sub->callback([&selected, fn] { selected = fn; });
  };
  add("simulate", "run one experiment and write observables and snapshots", cmd_simulate);
  add("converge", "errors at the final time for a list of step counts, with fitted orders", cmd_converge);
  add("error-growth", "error against time at a fixed step count", cmd_error_growth);
  add("phase-portrait", "level curves of the Gaussian width equation", cmd_phase_portrait);
  add("classify", "stationary Gaussian widths for lambda and omega", cmd_classify);
  add("blowup-check", "virial blow-up criterion for the initial data", cmd_blowup_check);
  bool list = false;
  app.add_subcommand("list-presets", "show built-in presets")->callback([&] { list = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (list) return cmd_list_presets();
    return selected(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid setting: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}
