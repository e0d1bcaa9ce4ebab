#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lenssplit/fft.hpp"
#include "lenssplit/types.hpp"

namespace lenssplit {

/// Uniform periodic grid on [a, b) with M points x_j = a + j h, h = (b - a)/M.
///
/// Wavenumbers are stored in FFT order: slot k holds xi = 2 pi m / (b - a)
/// with m = k for k < M/2 and m = k - M otherwise, so the modes run over
/// m in {-M/2, ..., M/2 - 1}. Coefficient arrays returned by analyze() use
/// the same slot order.
class SpatialGrid {
 public:
  /// M must be even and at least 4; b > a.
  static std::shared_ptr<const SpatialGrid> create(double a, double b, std::size_t M);
  /// Grid on [a, b) whose spacing is h; (b - a)/h must be an even integer.
  static std::shared_ptr<const SpatialGrid> with_spacing(double a, double b, double h);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double spacing() const noexcept { return h_; }
  std::size_t size() const noexcept { return points_.size(); }

  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> wavenumbers() const noexcept { return wavenumbers_; }
  /// Signed mode index m of storage slot k.
  long mode_index(std::size_t k) const noexcept;

  const FourierPlan& plan() const noexcept { return *plan_; }

  bool same_as(const SpatialGrid& other) const noexcept;

 private:
  SpatialGrid(double a, double b, std::size_t M);

  double a_, b_, h_;
  std::vector<double> points_;
  std::vector<double> wavenumbers_;
  std::shared_ptr<const FourierPlan> plan_;
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

/// Complex samples of a wavefunction on a SpatialGrid.
struct SpectralField {
  GridPtr grid;
  std::vector<cplx> values;

  SpectralField() = default;
  SpectralField(GridPtr g, std::vector<cplx> v);
  /// Zero field on g.
  explicit SpectralField(GridPtr g);

  std::size_t size() const noexcept { return values.size(); }
  bool all_finite() const noexcept;
};

/// Samples f(x_j) on the grid.
SpectralField sample(GridPtr grid, const std::function<cplx(double)>& f);

/// Coefficients c_m with f_j = sum_m c_m e^{i xi_m (x_j - a)} (FFT slot order).
std::vector<cplx> analyze(const SpectralField& f);
SpectralField synthesize(GridPtr grid, std::vector<cplx> coeffs);

/// Multiplies every Fourier coefficient by symbol(xi).
SpectralField apply_multiplier(const SpectralField& f, const std::function<cplx(double)>& symbol);
/// Same with the symbol already tabulated in FFT slot order.
SpectralField apply_multiplier(const SpectralField& f, std::span<const cplx> symbol);
/// In-place variant used inside the time steppers.
void apply_multiplier_inplace(const SpatialGrid& grid, std::span<cplx> values,
                              std::span<const cplx> symbol);

/// Spectral derivative d/dx.
SpectralField derivative(const SpectralField& f);

/// Trigonometric interpolant sum_m c_m e^{i xi_m (x - a)} at arbitrary
/// targets, by direct summation over the modes. Targets are reduced into
/// the period.
std::vector<cplx> eval_offgrid(const SpectralField& f, std::span<const double> targets);

/// The same interpolant at the uniformly spaced targets first + k * step,
/// k = 0..count-1, computed exactly with a chirp-z (Bluestein) transform in
/// O((M + count) log(M + count)).
std::vector<cplx> eval_uniform(const SpectralField& f, double first, double step, std::size_t count);

struct GridNorms {
  double l2 = 0.0;
  double l1 = 0.0;
  double h1_seminorm = 0.0;
  double weighted_l2 = 0.0;  ///< ||x f||, x the grid coordinate
};

/// Rectangle-rule norms; the H1 seminorm uses the spectral derivative.
GridNorms norms(const SpectralField& f);

double l2_norm(const SpectralField& f);
double l2_norm(const SpatialGrid& grid, std::span<const cplx> values);
/// ||f - g||_{L2}; the fields must live on the same grid.
double l2_distance(const SpectralField& f, const SpectralField& g);
double h1_seminorm(const SpectralField& f);

}  // namespace lenssplit
