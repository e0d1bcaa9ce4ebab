// AVX2/FMA variants of the pointwise kernels. Compiled with -mavx2 -mfma;
// only reached through the dispatch table after a CPU feature check.
//
// Complex arrays are interleaved (re, im) doubles, so one __m256d holds two
// complex values.

#include <immintrin.h>

#include <cmath>

#include "lenssplit/simd/kernels.hpp"

namespace lenssplit::simd::detail {
namespace {

inline const double* raw(const cplx* z) { return reinterpret_cast<const double*>(z); }
inline double* raw(cplx* z) { return reinterpret_cast<double*>(z); }

// [x0, x1] -> [x0, x0, x1, x1]
inline __m256d dup_pairs(const double* x) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(x)), 0b01010000);
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// (a_re + i a_im)(b_re + i b_im) for two packed complex values, with b given
// as duplicated real and imaginary parts.
inline __m256d complex_mul(__m256d a, __m256d b_re, __m256d b_im) {
  const __m256d a_swap = _mm256_permute_pd(a, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(a, b_re), _mm256_mul_pd(a_swap, b_im));
}

void cmul_avx2(cplx* data, const cplx* factors, std::size_t n) {
  double* d = raw(data);
  const double* f = raw(factors);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d a = _mm256_loadu_pd(d + 2 * j);
    const __m256d b = _mm256_loadu_pd(f + 2 * j);
    _mm256_storeu_pd(d + 2 * j, complex_mul(a, _mm256_movedup_pd(b), _mm256_permute_pd(b, 0xF)));
  }
  for (; j < n; ++j) {
    const double ar = data[j].real(), ai = data[j].imag();
    const double br = factors[j].real(), bi = factors[j].imag();
    data[j] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void rotate_avx2(cplx* data, const double* c, const double* s, std::size_t n) {
  double* d = raw(data);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d a = _mm256_loadu_pd(d + 2 * j);
    _mm256_storeu_pd(d + 2 * j, complex_mul(a, dup_pairs(c + j), dup_pairs(s + j)));
  }
  for (; j < n; ++j) {
    const double ar = data[j].real(), ai = data[j].imag();
    data[j] = cplx(ar * c[j] - ai * s[j], ar * s[j] + ai * c[j]);
  }
}

void scale_avx2(cplx* data, double factor, std::size_t n) {
  double* d = raw(data);
  const std::size_t len = 2 * n;
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) _mm256_storeu_pd(d + k, _mm256_mul_pd(_mm256_loadu_pd(d + k), f));
  for (; k < len; ++k) d[k] *= factor;
}

double sum_abs2_avx2(const cplx* z, std::size_t n) {
  const double* p = raw(z);
  const std::size_t len = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= len; k += 8) {
    const __m256d a = _mm256_loadu_pd(p + k);
    const __m256d b = _mm256_loadu_pd(p + k + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < len; ++k) acc += p[k] * p[k];
  return acc;
}

double sum_weighted_abs2_avx2(const cplx* z, const double* w, std::size_t n) {
  const double* p = raw(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d a = _mm256_loadu_pd(p + 2 * j);
    acc = _mm256_fmadd_pd(dup_pairs(w + j), _mm256_mul_pd(a, a), acc);
  }
  double total = hsum(acc);
  for (; j < n; ++j) total += w[j] * (z[j].real() * z[j].real() + z[j].imag() * z[j].imag());
  return total;
}

// |z0|..|z3| in order for four packed complex values starting at p.
inline __m256d modulus4(const double* p) {
  const __m256d a = _mm256_loadu_pd(p);
  const __m256d b = _mm256_loadu_pd(p + 4);
  const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
  return _mm256_sqrt_pd(_mm256_permute4x64_pd(h, 0b11011000));
}

double sum_abs_avx2(const cplx* z, std::size_t n) {
  const double* p = raw(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) acc = _mm256_add_pd(acc, modulus4(p + 2 * j));
  double total = hsum(acc);
  for (; j < n; ++j) total += std::sqrt(z[j].real() * z[j].real() + z[j].imag() * z[j].imag());
  return total;
}

void modulus_avx2(const cplx* z, double* out, std::size_t n) {
  const double* p = raw(z);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) _mm256_storeu_pd(out + j, modulus4(p + 2 * j));
  for (; j < n; ++j) out[j] = std::sqrt(z[j].real() * z[j].real() + z[j].imag() * z[j].imag());
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      Isa::Avx2,    "avx2",          cmul_avx2,    scale_avx2,  sum_abs2_avx2,
      sum_abs_avx2, sum_weighted_abs2_avx2, modulus_avx2, rotate_avx2,
  };
  return table;
}

}  // namespace lenssplit::simd::detail
