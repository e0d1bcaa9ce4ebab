#include "lenssplit/harness/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace lenssplit::harness {

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (!failed.load()) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

double final_error(const ExperimentSpec& spec, std::size_t N, const Method& method) {
  SolverConfig cfg = solver_config(spec, N, method);
  cfg.observers = {Observable::Error};
  cfg.record_every = N;
  cfg.blowup_factor.reset();
  cfg.reference = make_reference(spec, N, method, {0.0, spec.T});
  const SpectralField u0 = sample(cfg.spatial, [&](double y) { return spec.initial(y); });
  const RunResult result = run(cfg, u0);
  return result.record.series.at("error").back().value;
}

ConvergenceResult convergence_study(const ExperimentSpec& spec, std::size_t workers) {
  if (spec.reference == ReferenceKind::None) throw ConfigError("convergence study needs output.reference");
  if (spec.n_list.size() < 3) throw ConfigError("convergence study refuses to fit fewer than 3 step counts (study.n_list)");

  ConvergenceResult result;
  for (const auto& m : spec.methods)
    for (std::size_t N : spec.n_list) result.rows.push_back({m, N, spec.T / static_cast<double>(N), 0.0});
  // Longest runs first so the pool drains evenly.
  std::vector<std::size_t> order(result.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return result.rows[a].N > result.rows[b].N; });
  parallel_for(order.size(), workers, [&](std::size_t k) {
    auto& row = result.rows[order[k]];
    row.error = final_error(spec, row.N, row.method);
  });

  for (const auto& m : spec.methods) {
    std::vector<double> tau, err;
    for (const auto& row : result.rows)
      if (row.method == m) {
        tau.push_back(row.tau);
        err.push_back(row.error);
      }
    OrderEstimate est{m, std::nullopt, ""};
    try {
      est.fit = order_fit(tau, err);
    } catch (const std::invalid_argument& e) {
      est.note = e.what();
    }
    result.orders.push_back(std::move(est));
  }
  return result;
}

std::vector<GrowthSeries> error_growth_study(const ExperimentSpec& spec, std::size_t workers) {
  if (spec.reference == ReferenceKind::None) throw ConfigError("error-growth study needs output.reference");
  std::vector<GrowthSeries> out(spec.methods.size());
  parallel_for(out.size(), workers, [&](std::size_t i) {
    const Method& m = spec.methods[i];
    SolverConfig cfg = solver_config(spec, spec.N, m);
    cfg.observers = {Observable::Error};
    cfg.record_every = std::max<std::size_t>(1, spec.N / spec.error_samples);
    cfg.blowup_factor.reset();
    std::vector<double> times;
    for (std::size_t n = 0; n <= spec.N; n += cfg.record_every) times.push_back(cfg.grids.t()[n]);
    if (spec.N % cfg.record_every) times.push_back(cfg.grids.t()[spec.N]);
    cfg.reference = make_reference(spec, spec.N, m, times);
    const SpectralField u0 = sample(cfg.spatial, [&](double y) { return spec.initial(y); });
    RunResult result = run(cfg, u0);

    GrowthSeries series;
    series.method = m;
    series.rows = std::move(result.record.series.at("error"));
    std::vector<double> t, e, tl, le;
    for (const auto& r : series.rows) {
      t.push_back(r.t);
      e.push_back(r.value);
      if (r.value > 0.0 && r.n > 0) {
        tl.push_back(r.t);
        le.push_back(std::log(r.value));
      }
    }
    series.linear = linear_fit(t, e);
    series.log_linear = linear_fit(tl, le);
    out[i] = std::move(series);
  });
  return out;
}

std::vector<EpsilonRow> epsilon_sweep(const ExperimentSpec& spec, std::size_t workers) {
  if (spec.params.kind != NonlinearityKind::Logarithmic) throw ConfigError("epsilon sweep needs the log equation");
  if (spec.reference == ReferenceKind::None) throw ConfigError("epsilon sweep needs output.reference");
  std::vector<EpsilonRow> rows;
  for (double eps : spec.epsilons) {
    if (!(eps > 0.0)) throw ConfigError("study.epsilons must be positive");
    rows.push_back({eps, 0.0});
  }
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    ExperimentSpec local = spec;
    local.params.epsilon = rows[i].epsilon;
    rows[i].error = final_error(local, spec.N, spec.method);
  });
  return rows;
}

}  // namespace lenssplit::harness
