#include "lenssplit/spectral_grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lenssplit/simd/kernels.hpp"

namespace lenssplit {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fractional part of (x - a)/L in [0, 1).
double period_fraction(double x, double a, double L) {
  const double u = (x - a) / L;
  double f = u - std::floor(u);
  if (f >= 1.0) f = 0.0;
  return f;
}

}  // namespace

SpatialGrid::SpatialGrid(double a, double b, std::size_t M)
    : a_(a), b_(b), h_((b - a) / static_cast<double>(M)), points_(M), wavenumbers_(M) {
  const double L = b - a;
  for (std::size_t j = 0; j < M; ++j) points_[j] = a + static_cast<double>(j) * h_;
  for (std::size_t k = 0; k < M; ++k) wavenumbers_[k] = kTwoPi * static_cast<double>(mode_index(k)) / L;
  plan_ = FourierPlan::get(M);
}

std::shared_ptr<const SpatialGrid> SpatialGrid::create(double a, double b, std::size_t M) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("SpatialGrid: need finite a < b");
  if (M < 4 || M % 2 != 0) throw std::invalid_argument("SpatialGrid: M must be even and >= 4");
  return std::shared_ptr<const SpatialGrid>(new SpatialGrid(a, b, M));
}

std::shared_ptr<const SpatialGrid> SpatialGrid::with_spacing(double a, double b, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("SpatialGrid: spacing must be positive");
  const double ratio = (b - a) / h;
  const double M = std::round(ratio);
  if (M < 4.0 || std::abs(ratio - M) > 1e-9 * M)
    throw std::invalid_argument("SpatialGrid: (b - a)/h must be an integer");
  return create(a, b, static_cast<std::size_t>(M));
}

long SpatialGrid::mode_index(std::size_t k) const noexcept {
  const auto M = static_cast<long>(points_.size());
  const auto kk = static_cast<long>(k);
  return kk < M / 2 ? kk : kk - M;
}

bool SpatialGrid::same_as(const SpatialGrid& other) const noexcept {
  return this == &other || (a_ == other.a_ && b_ == other.b_ && size() == other.size());
}

SpectralField::SpectralField(GridPtr g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw std::invalid_argument("SpectralField: null grid");
  if (values.size() != grid->size()) throw std::invalid_argument("SpectralField: length does not match grid");
}

SpectralField::SpectralField(GridPtr g) : grid(std::move(g)) {
  if (!grid) throw std::invalid_argument("SpectralField: null grid");
  values.assign(grid->size(), cplx(0.0, 0.0));
}

bool SpectralField::all_finite() const noexcept {
  return std::all_of(values.begin(), values.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

SpectralField sample(GridPtr grid, const std::function<cplx(double)>& f) {
  SpectralField out(grid);
  const auto x = grid->points();
  for (std::size_t j = 0; j < x.size(); ++j) out.values[j] = f(x[j]);
  return out;
}

std::vector<cplx> analyze(const SpectralField& f) {
  std::vector<cplx> c = f.values;
  f.grid->plan().forward(c);
  simd::scale(c, 1.0 / static_cast<double>(c.size()));
  return c;
}

SpectralField synthesize(GridPtr grid, std::vector<cplx> coeffs) {
  if (coeffs.size() != grid->size()) throw std::invalid_argument("synthesize: length does not match grid");
  grid->plan().backward(coeffs);
  return SpectralField(std::move(grid), std::move(coeffs));
}

void apply_multiplier_inplace(const SpatialGrid& grid, std::span<cplx> values, std::span<const cplx> symbol) {
  grid.plan().forward(values);
  simd::cmul(values, symbol);
  grid.plan().backward(values);
  simd::scale(values, 1.0 / static_cast<double>(values.size()));
}

SpectralField apply_multiplier(const SpectralField& f, std::span<const cplx> symbol) {
  if (symbol.size() != f.size()) throw std::invalid_argument("apply_multiplier: symbol length mismatch");
  SpectralField out = f;
  apply_multiplier_inplace(*f.grid, out.values, symbol);
  return out;
}

SpectralField apply_multiplier(const SpectralField& f, const std::function<cplx(double)>& symbol) {
  const auto xi = f.grid->wavenumbers();
  std::vector<cplx> table(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) table[k] = symbol(xi[k]);
  return apply_multiplier(f, table);
}

SpectralField derivative(const SpectralField& f) {
  return apply_multiplier(f, [](double xi) { return cplx(0.0, xi); });
}

std::vector<cplx> eval_offgrid(const SpectralField& f, std::span<const double> targets) {
  const SpatialGrid& grid = *f.grid;
  const std::vector<cplx> c = analyze(f);
  const std::size_t M = grid.size();
  const std::size_t half = M / 2;
  constexpr std::size_t kResync = 64;

  std::vector<cplx> out(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double theta = kTwoPi * period_fraction(targets[i], grid.a(), grid.length());
    const cplx w = std::polar(1.0, theta);
    const cplx w_conj = std::conj(w);
    cplx acc(0.0, 0.0);
    // Non-negative modes m = 0..M/2-1 live in slots 0..M/2-1.
    cplx power(1.0, 0.0);
    for (std::size_t m = 0; m < half; ++m) {
      if (m % kResync == 0) power = std::polar(1.0, theta * static_cast<double>(m));
      acc += c[m] * power;
      power *= w;
    }
    // Negative modes m = -1..-M/2 live in slots M-1..M/2.
    power = w_conj;
    for (std::size_t q = 1; q <= half; ++q) {
      if (q % kResync == 0) power = std::polar(1.0, -theta * static_cast<double>(q));
      acc += c[M - q] * power;
      power *= w_conj;
    }
    out[i] = acc;
  }
  return out;
}

std::vector<cplx> eval_uniform(const SpectralField& f, double first, double step, std::size_t count) {
  if (count == 0) return {};
  const SpatialGrid& grid = *f.grid;
  const std::size_t M = grid.size();
  const long half = static_cast<long>(M / 2);
  const std::vector<cplx> c = analyze(f);

  // Reorder to p = m + M/2 in [0, M) and fold in the offset phase.
  const double offset = period_fraction(first, grid.a(), grid.length());
  const double theta = kTwoPi * step / grid.length();
  const std::size_t conv_len = std::bit_ceil(M + count - 1);
  std::vector<cplx> a(conv_len, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < M; ++k) {
    const long m = grid.mode_index(k);
    const auto p = static_cast<std::size_t>(m + half);
    const double pd = static_cast<double>(p);
    const double angle = kTwoPi * static_cast<double>(m) * offset + 0.5 * theta * pd * pd;
    a[p] = c[k] * std::polar(1.0, angle);
  }

  // Chirp kernel W^{-q^2/2}, q in [-(M-1), count-1], stored circularly.
  std::vector<cplx> b(conv_len, cplx(0.0, 0.0));
  for (std::size_t q = 0; q < count; ++q) {
    const double qd = static_cast<double>(q);
    b[q] = std::polar(1.0, -0.5 * theta * qd * qd);
  }
  for (std::size_t q = 1; q < M; ++q) {
    const double qd = static_cast<double>(q);
    b[conv_len - q] = std::polar(1.0, -0.5 * theta * qd * qd);
  }

  const auto plan = FourierPlan::get(conv_len);
  plan->forward(a);
  plan->forward(b);
  simd::cmul(a, b);
  plan->backward(a);

  std::vector<cplx> out(count);
  const double norm = 1.0 / static_cast<double>(conv_len);
  for (std::size_t j = 0; j < count; ++j) {
    const double jd = static_cast<double>(j);
    const double angle = theta * (0.5 * jd * jd - static_cast<double>(half) * jd);
    out[j] = a[j] * norm * std::polar(1.0, angle);
  }
  return out;
}

double l2_norm(const SpatialGrid& grid, std::span<const cplx> values) {
  return std::sqrt(grid.spacing() * simd::sum_abs2(values));
}

double l2_norm(const SpectralField& f) { return l2_norm(*f.grid, f.values); }

double l2_distance(const SpectralField& f, const SpectralField& g) {
  if (!f.grid->same_as(*g.grid)) throw std::invalid_argument("l2_distance: fields live on different grids");
  std::vector<cplx> diff(f.size());
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = f.values[j] - g.values[j];
  return l2_norm(*f.grid, diff);
}

double h1_seminorm(const SpectralField& f) {
  const std::vector<cplx> c = analyze(f);
  const auto xi = f.grid->wavenumbers();
  std::vector<double> xi2(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) xi2[k] = xi[k] * xi[k];
  return std::sqrt(f.grid->length() * simd::sum_weighted_abs2(c, xi2));
}

GridNorms norms(const SpectralField& f) {
  const SpatialGrid& grid = *f.grid;
  GridNorms n;
  n.l2 = l2_norm(f);
  n.l1 = grid.spacing() * simd::sum_abs(f.values);
  n.h1_seminorm = h1_seminorm(f);
  const auto x = grid.points();
  std::vector<double> x2(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) x2[j] = x[j] * x[j];
  n.weighted_l2 = std::sqrt(grid.spacing() * simd::sum_weighted_abs2(f.values, x2));
  return n;
}

}  // namespace lenssplit
