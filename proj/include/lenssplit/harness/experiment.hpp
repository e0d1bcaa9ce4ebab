#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lenssplit/gaussian_oracle.hpp"
#include "lenssplit/harness/config.hpp"
#include "lenssplit/harness/initial_data.hpp"
#include "lenssplit/integrators.hpp"

namespace lenssplit::harness {

/// Splitting plus time grid: lieI, lieII, strangI, strangII.
struct Method {
  Stepper stepper = Stepper::Strang;
  TimeGridKind grid = TimeGridKind::UniformT;

  std::string name() const;
  /// Throws ConfigError for unknown names.
  static Method parse(const std::string& name, std::size_t line = 0);
  bool operator==(const Method&) const = default;
};

enum class ReferenceKind { None, Gaussian, Fine, Linear };
std::string to_string(ReferenceKind kind);

struct Domain {
  double a = 0.0, b = 0.0;
  std::size_t points = 0;
};

/// A validated experiment description.
struct ExperimentSpec {
  std::string name;
  std::string reproduces;
  std::string description;

  PhysParams params;
  InitialData initial;
  std::string initial_text;
  Domain lens;  ///< points == 0 when no [grid] section was given
  std::optional<Domain> physical;

  double T = 1.0;
  std::size_t N = 1;
  Method method;
  bool cutoff = false;
  std::optional<double> blowup_factor;
  std::size_t gauge_refine = 20;
  std::size_t sech_refine = 20;

  std::vector<Observable> observables;
  std::size_t record_every = 1;
  std::size_t snapshot_count = 0;
  std::size_t snapshot_points = 1024;
  ReferenceKind reference = ReferenceKind::None;
  std::size_t reference_factor = 8;

  std::vector<std::size_t> n_list;
  std::vector<Method> methods;
  std::size_t error_samples = 250;
  std::size_t workers = 1;
  std::vector<double> epsilons;

  PhaseBox box;
  std::size_t trajectories = 12;
  std::size_t samples = 400;

  Config config;
};

/// Validates the schema (unknown sections or keys, bad values, inconsistent
/// domains) and fills defaults. Throws ConfigError with the line number.
ExperimentSpec build_spec(const Config& config);

/// Throws ConfigError unless the spec has a [grid] section and initial data.
void require_field_setup(const ExperimentSpec& spec);

GridPtr lens_grid(const ExperimentSpec& spec);
GridPtr physical_grid(const ExperimentSpec& spec);

/// Solver configuration for one run of the spec with N steps and a method.
SolverConfig solver_config(const ExperimentSpec& spec, std::size_t N, const Method& method);

/// Reference solution for error measurement. `times` lists the physical
/// times at which it will be queried (only used by the fine-grid reference,
/// which solves once with N * reference_factor steps).
ReferenceSolution make_reference(const ExperimentSpec& spec, std::size_t N, const Method& method,
                                 const std::vector<double>& times);

/// Snapshot times for a run: snapshot_count + 1 nodes spread evenly over the steps.
std::vector<double> snapshot_times(const ExperimentSpec& spec, const TimeGrids& grids);

/// Meta block echoing the spec.
void describe(const ExperimentSpec& spec, ExperimentRecord& record);

}  // namespace lenssplit::harness
