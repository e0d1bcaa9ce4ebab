#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "lenssplit/simd/kernels.hpp"

namespace lenssplit::simd {
namespace {

bool cpu_has_avx2() {
#if defined(LENSSPLIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& resolve() {
  if (const char* forced = std::getenv("LENSSPLIT_KERNELS")) {
    if (std::string_view(forced) == "scalar") return scalar_kernels();
  }
  if (const KernelTable* t = avx2_kernels()) return *t;
  return scalar_kernels();
}

void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd kernel: span length mismatch");
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(LENSSPLIT_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& table = resolve();
  return table;
}

void cmul(std::span<cplx> data, std::span<const cplx> factors) {
  require_same(data.size(), factors.size());
  active_kernels().cmul(data.data(), factors.data(), data.size());
}

void scale(std::span<cplx> data, double factor) {
  active_kernels().scale(data.data(), factor, data.size());
}

double sum_abs2(std::span<const cplx> z) { return active_kernels().sum_abs2(z.data(), z.size()); }

double sum_abs(std::span<const cplx> z) { return active_kernels().sum_abs(z.data(), z.size()); }

double sum_weighted_abs2(std::span<const cplx> z, std::span<const double> w) {
  require_same(z.size(), w.size());
  return active_kernels().sum_weighted_abs2(z.data(), w.data(), z.size());
}

void modulus(std::span<const cplx> z, std::span<double> out) {
  require_same(z.size(), out.size());
  active_kernels().modulus(z.data(), out.data(), z.size());
}

void rotate(std::span<cplx> data, std::span<const double> c, std::span<const double> s) {
  require_same(data.size(), c.size());
  require_same(data.size(), s.size());
  active_kernels().rotate(data.data(), c.data(), s.data(), data.size());
}

}  // namespace lenssplit::simd
