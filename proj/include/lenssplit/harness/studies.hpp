#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lenssplit/harness/experiment.hpp"
#include "lenssplit/harness/fit.hpp"

namespace lenssplit::harness {

/// Runs fn(0) .. fn(count - 1) on up to `workers` threads. The first
/// exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

/// L2 error at the final time of one run with N steps.
double final_error(const ExperimentSpec& spec, std::size_t N, const Method& method);

struct ConvergenceRow {
  Method method;
  std::size_t N = 0;
  double tau = 0.0;
  double error = 0.0;
};

struct OrderEstimate {
  Method method;
  std::optional<LinearFit> fit;  ///< empty when the data could not be fitted
  std::string note;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;  ///< grouped by method, N ascending as listed
  std::vector<OrderEstimate> orders;
};

/// Errors at T for every method and N in spec.n_list, with least-squares
/// orders. Throws ConfigError when fewer than 3 step counts are given or no
/// reference is configured.
ConvergenceResult convergence_study(const ExperimentSpec& spec, std::size_t workers);

struct GrowthSeries {
  Method method;
  std::vector<SeriesRow> rows;  ///< error against time, including t = 0
  LinearFit linear;             ///< error ~ t
  LinearFit log_linear;         ///< ln(error) ~ t over rows with positive error
};

/// Error histories at fixed N = spec.N for each method in spec.methods,
/// sampled error_samples times.
std::vector<GrowthSeries> error_growth_study(const ExperimentSpec& spec, std::size_t workers);

struct EpsilonRow {
  double epsilon = 0.0;
  double error = 0.0;
};

/// Final error of spec.method at spec.N for each epsilon in spec.epsilons.
std::vector<EpsilonRow> epsilon_sweep(const ExperimentSpec& spec, std::size_t workers);

}  // namespace lenssplit::harness
