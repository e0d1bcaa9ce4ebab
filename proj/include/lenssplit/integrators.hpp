#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lenssplit/flows.hpp"
#include "lenssplit/model_transforms.hpp"
#include "lenssplit/record.hpp"
#include "lenssplit/spectral_grid.hpp"

namespace lenssplit {

enum class Stepper { Lie, Strang };

enum class Observable {
  Mass,      ///< ||field||_{L2(y)}
  H1,        ///< ||d_y field||_{L2(y)}
  Weighted,  ///< ||y field||_{L2(y)}
  Error,     ///< ||u^n - u_ref(t_n)||_{L2(x)} after reconstruction
};

std::string to_string(Stepper stepper);
std::string to_string(Observable obs);

/// Reference solution u(t, .) sampled on the physical grid.
using ReferenceSolution = std::function<SpectralField(double t, const GridPtr& xgrid)>;

struct SolverConfig {
  PhysParams params;
  TimeGrids grids;
  GridPtr spatial;  ///< lens (y) grid the unknown lives on
  Stepper stepper = Stepper::Strang;
  std::optional<CutoffSpec> cutoff;
  std::vector<Observable> observers;
  std::size_t record_every = 1;
  GridPtr xgrid;                  ///< physical grid for reconstruction; defaults to `spatial`
  ReferenceSolution reference;    ///< needed by Observable::Error
  /// Abort when ||d_y field|| exceeds this multiple of its initial value.
  std::optional<double> blowup_factor;
  std::size_t gauge_refine = 20;
  std::size_t sech_refine = 20;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
  const GridPtr& physical_grid() const { return xgrid ? xgrid : spatial; }
};

struct SolverState {
  std::size_t n = 0;
  double s = 0.0;
  double t = 0.0;
  SpectralField field;
};

/// One Lie-Trotter step: nonlinear flow over step n, then the free flow over
/// delta_n (with the cut-off when configured).
SolverState step_lie(SolverState state, const SolverConfig& cfg);
/// One Strang step: free half-step, nonlinear flow over step n, free half-step.
SolverState step_strang(SolverState state, const SolverConfig& cfg);

struct RunResult {
  SolverState final;
  ExperimentRecord record;
};

/// Runs all N steps from u0 (given on the lens grid, where u0 = field at
/// s = 0), recording observables every cfg.record_every steps (and at the
/// last step) and snapshots at the requested times, which must be nodes of
/// the time grid. Stops early, filling record.blowup, when the gradient
/// threshold is crossed. Throws NumericalFailure on non-finite values.
RunResult run(const SolverConfig& cfg, const SpectralField& u0, std::span<const double> snapshot_times = {});

}  // namespace lenssplit
