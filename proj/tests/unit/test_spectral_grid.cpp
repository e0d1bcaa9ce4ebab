#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lenssplit/spectral_grid.hpp"

using namespace lenssplit;
using std::numbers::pi;

namespace {

SpectralField random_field(const GridPtr& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  SpectralField f(g);
  for (auto& v : f.values) v = cplx(d(rng), d(rng));
  return f;
}

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("spectral_grid") {

TEST_CASE("grid geometry") {
  auto g = SpatialGrid::create(-10.0, 10.0, 64);
  CHECK(g->size() == 64);
  CHECK(g->spacing() == doctest::Approx(20.0 / 64).epsilon(1e-15));
  for (std::size_t j = 1; j < g->size(); ++j)
    CHECK(g->points()[j] - g->points()[j - 1] == doctest::Approx(g->spacing()).epsilon(1e-13));
  CHECK(g->mode_index(0) == 0);
  CHECK(g->mode_index(31) == 31);
  CHECK(g->mode_index(32) == -32);
  CHECK(g->mode_index(63) == -1);
  CHECK(g->wavenumbers()[1] == doctest::Approx(2 * pi / 20.0));
  CHECK(g->wavenumbers()[63] == doctest::Approx(-2 * pi / 20.0));
  CHECK_THROWS(SpatialGrid::create(0.0, 1.0, 7));
  CHECK_THROWS(SpatialGrid::create(1.0, 1.0, 8));
  CHECK_THROWS(SpatialGrid::create(0.0, 1.0, 2));
  auto h = SpatialGrid::with_spacing(-10.0, 10.0, 1.0 / 512);
  CHECK(h->size() == 10240);
}

TEST_CASE("constant field has only the zero mode") {
  auto g = SpatialGrid::create(-3.0, 5.0, 128);
  auto c = analyze(sample(g, [](double) { return cplx(1.0); }));
  CHECK(std::abs(c[0] - 1.0) < 1e-15);
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(std::abs(c[k]) < 1e-15);
}

TEST_CASE("pure mode has one coefficient") {
  auto g = SpatialGrid::create(-10.0, 10.0, 256);
  const double xi1 = g->wavenumbers()[1];
  auto c = analyze(sample(g, [&](double x) { return std::exp(cplx(0.0, xi1 * x)); }));
  CHECK(std::abs(c[1]) == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t k = 0; k < c.size(); ++k)
    if (k != 1) CHECK(std::abs(c[k]) < 1e-14);
}

TEST_CASE("round trip and Parseval for M = 64 .. 4096") {
  for (std::size_t M = 64; M <= 4096; M *= 2) {
    auto g = SpatialGrid::create(-7.0, 9.0, M);
    const auto f = random_field(g, static_cast<unsigned>(M));
    const auto c = analyze(f);
    const auto back = synthesize(g, c);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      num += std::norm(back.values[j] - f.values[j]);
      den += std::norm(f.values[j]);
    }
    CHECK(std::sqrt(num / den) < 1e-12);
    const double l2sq = std::pow(l2_norm(f), 2);
    double csum = 0.0;
    for (auto v : c) csum += std::norm(v);
    CHECK(std::abs(l2sq - csum * g->length()) <= 1e-10 * l2sq);
  }
}

TEST_CASE("multipliers") {
  auto g = SpatialGrid::create(-10.0, 10.0, 256);
  const auto f = random_field(g, 7);
  CHECK(max_abs_diff(apply_multiplier(f, [](double) { return cplx(1.0); }).values, f.values) < 1e-13);

  const double xi1 = g->wavenumbers()[1];
  const auto mode = sample(g, [&](double x) { return std::exp(cplx(0.0, xi1 * x)); });
  const auto d = apply_multiplier(mode, [](double xi) { return cplx(0.0, xi); });
  for (std::size_t j = 0; j < g->size(); ++j) CHECK(std::abs(d.values[j] - cplx(0.0, xi1) * mode.values[j]) < 1e-13);
  CHECK(max_abs_diff(derivative(mode).values, d.values) < 1e-13);

  const auto u = apply_multiplier(f, [](double xi) { return std::exp(cplx(0.0, std::sin(3.0 * xi) + xi * xi)); });
  CHECK(std::abs(l2_norm(u) - l2_norm(f)) < 1e-12 * l2_norm(f));
}

TEST_CASE("off-grid evaluation") {
  auto g = SpatialGrid::create(-10.0, 10.0, 1024);
  SUBCASE("nodes are reproduced") {
    const auto f = random_field(g, 3);
    const auto at_nodes = eval_offgrid(f, g->points());
    CHECK(max_abs_diff(at_nodes, f.values) < 1e-12);
    const auto uniform = eval_uniform(f, g->a(), g->spacing(), g->size());
    CHECK(max_abs_diff(uniform, f.values) < 1e-12);
  }
  SUBCASE("pure mode is exact anywhere") {
    const double xi1 = g->wavenumbers()[1];
    const auto mode = sample(g, [&](double x) { return std::exp(cplx(0.0, xi1 * x)); });
    const std::vector<double> targets = {-9.87654321, -1.0 / 3.0, 0.0, 2.718281828, 9.999};
    const auto v = eval_offgrid(mode, targets);
    for (std::size_t i = 0; i < targets.size(); ++i) CHECK(std::abs(v[i] - std::exp(cplx(0.0, xi1 * targets[i]))) < 1e-12);
  }
  SUBCASE("Gaussian matches the closed form off the grid") {
    const auto f = sample(g, [](double x) { return cplx(std::exp(-x * x)); });
    std::vector<double> targets;
    for (int i = 0; i < 200; ++i) targets.push_back(-5.0 + 0.0501234 * i);
    const auto v = eval_offgrid(f, targets);
    for (std::size_t i = 0; i < targets.size(); ++i) CHECK(std::abs(v[i] - std::exp(-targets[i] * targets[i])) < 1e-10);
    // The chirp-z route agrees with direct summation.
    const auto w = eval_uniform(f, targets[0], 0.0501234, targets.size());
    CHECK(max_abs_diff(v, w) < 1e-10);
  }
}

TEST_CASE("norms") {
  auto g = SpatialGrid::create(-10.0, 10.0, 1024);
  const auto zero = norms(SpectralField(g));
  CHECK(zero.l2 == 0.0);
  CHECK(zero.l1 == 0.0);
  CHECK(zero.h1_seminorm == 0.0);
  CHECK(zero.weighted_l2 == 0.0);

  const double alpha = 3.0 - std::sqrt(5.0);
  const auto u0 = sample(g, [&](double x) { return cplx(2.0 * std::exp(-alpha * x * x / 2)); });
  const auto n = norms(u0);
  CHECK(n.l2 * n.l2 == doctest::Approx(4.0 * std::sqrt(pi / alpha)).epsilon(1e-12));
  CHECK(n.l2 * n.l2 == doctest::Approx(8.1116).epsilon(1e-4));
  CHECK(n.l1 == doctest::Approx(2.0 * std::sqrt(2.0 * pi / alpha)).epsilon(1e-12));
  CHECK(n.h1_seminorm * n.h1_seminorm == doctest::Approx(2.0 * std::sqrt(pi * alpha)).epsilon(1e-12));
  CHECK(n.weighted_l2 * n.weighted_l2 == doctest::Approx(2.0 * std::sqrt(pi) / std::pow(alpha, 1.5)).epsilon(1e-10));
}

TEST_CASE("H1 seminorm agrees with finite differences to O(h^2)") {
  double previous = 0.0;
  for (std::size_t M : {256, 512, 1024}) {
    auto g = SpatialGrid::create(-10.0, 10.0, M);
    const auto f = sample(g, [](double x) { return cplx(std::exp(-x * x) * (1.0 + 0.3 * x)); });
    const double h = g->spacing();
    double fd = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      const cplx d = (f.values[(j + 1) % M] - f.values[(j + M - 1) % M]) / (2.0 * h);
      fd += std::norm(d) * h;
    }
    const double diff = std::abs(std::sqrt(fd) - h1_seminorm(f));
    CHECK(diff < 2.0 * h * h);
    if (previous > 0.0) CHECK(diff < 0.3 * previous);
    previous = diff;
  }
}

}
