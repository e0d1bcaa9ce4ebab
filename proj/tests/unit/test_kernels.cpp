#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <random>
#include <vector>

#include "doctest.h"
#include "lenssplit/simd/kernels.hpp"

using namespace lenssplit;
using namespace lenssplit::simd;

namespace {

std::vector<cplx> random_complex(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = cplx(d(rng), d(rng));
  return v;
}

std::vector<double> random_real(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Lengths around the vector width plus a large one.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 1000, 4099};

void compare_tables(const KernelTable& ref, const KernelTable& simd) {
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    const auto a = random_complex(n, 11 + static_cast<unsigned>(n));
    const auto b = random_complex(n, 97 + static_cast<unsigned>(n));
    const auto w = random_real(n, 5 + static_cast<unsigned>(n));
    const auto c = random_real(n, 6 + static_cast<unsigned>(n));
    const auto s = random_real(n, 8 + static_cast<unsigned>(n));

    auto x = a, y = a;
    ref.cmul(x.data(), b.data(), n);
    simd.cmul(y.data(), b.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(x[j] - y[j]) <= 1e-15 * (1.0 + std::abs(x[j])));

    x = a;
    y = a;
    ref.scale(x.data(), 0.37, n);
    simd.scale(y.data(), 0.37, n);
    CHECK(std::memcmp(x.data(), y.data(), n * sizeof(cplx)) == 0);

    x = a;
    y = a;
    ref.rotate(x.data(), c.data(), s.data(), n);
    simd.rotate(y.data(), c.data(), s.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(x[j] - y[j]) <= 1e-15 * (1.0 + std::abs(x[j])));

    std::vector<double> m1(n), m2(n);
    ref.modulus(a.data(), m1.data(), n);
    simd.modulus(a.data(), m2.data(), n);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(m1[j] - m2[j]) <= 1e-15 * m1[j]);

    const double scale_n = 1e-14 * (1.0 + static_cast<double>(n));
    CHECK(std::abs(ref.sum_abs2(a.data(), n) - simd.sum_abs2(a.data(), n)) <= scale_n);
    CHECK(std::abs(ref.sum_abs(a.data(), n) - simd.sum_abs(a.data(), n)) <= scale_n);
    CHECK(std::abs(ref.sum_weighted_abs2(a.data(), w.data(), n) - simd.sum_weighted_abs2(a.data(), w.data(), n)) <=
          scale_n);
  }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar kernels against direct formulas") {
  const auto& k = scalar_kernels();
  const auto a = random_complex(37, 1);
  const auto b = random_complex(37, 2);
  auto x = a;
  k.cmul(x.data(), b.data(), x.size());
  for (std::size_t j = 0; j < x.size(); ++j) CHECK(std::abs(x[j] - a[j] * b[j]) < 1e-15);
  double s2 = 0.0, s1 = 0.0;
  for (auto z : a) {
    s2 += std::norm(z);
    s1 += std::abs(z);
  }
  CHECK(k.sum_abs2(a.data(), a.size()) == doctest::Approx(s2).epsilon(1e-14));
  CHECK(k.sum_abs(a.data(), a.size()) == doctest::Approx(s1).epsilon(1e-14));
  std::vector<double> m(a.size());
  k.modulus(a.data(), m.data(), a.size());
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(m[j] == doctest::Approx(std::abs(a[j])).epsilon(1e-15));
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const KernelTable* avx = avx2_kernels();
  if (!avx) {
    MESSAGE("AVX2 not available on this machine; equivalence test skipped");
    return;
  }
  CHECK(avx->isa == Isa::Avx2);
  compare_tables(scalar_kernels(), *avx);
}

TEST_CASE("dispatch honours LENSSPLIT_KERNELS") {
  const char* forced = std::getenv("LENSSPLIT_KERNELS");
  if (forced && std::string(forced) == "scalar") {
    CHECK(active_kernels().isa == Isa::Scalar);
  } else if (avx2_kernels()) {
    CHECK(active_kernels().isa == Isa::Avx2);
  } else {
    CHECK(active_kernels().isa == Isa::Scalar);
  }
}

TEST_CASE("span front-ends check lengths") {
  std::vector<cplx> a(4), b(3);
  CHECK_THROWS_AS(cmul(a, b), std::invalid_argument);
  std::vector<double> out(2);
  CHECK_THROWS_AS(modulus(a, out), std::invalid_argument);
}

}
