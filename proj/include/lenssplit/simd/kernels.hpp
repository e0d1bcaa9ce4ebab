#pragma once

// Pointwise and reduction kernels behind the spectral grid and the flows.
//
// Every kernel has a scalar reference implementation. On x86-64 an AVX2/FMA
// variant is compiled separately and selected at startup when the CPU
// supports it. Setting LENSSPLIT_KERNELS=scalar in the environment forces the
// reference table (useful for bisecting discrepancies).

#include <cstddef>
#include <span>

#include "lenssplit/types.hpp"

namespace lenssplit::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // data[j] *= factors[j]
  void (*cmul)(cplx* data, const cplx* factors, std::size_t n);
  // data[j] *= factor
  void (*scale)(cplx* data, double factor, std::size_t n);
  // sum |z_j|^2
  double (*sum_abs2)(const cplx* z, std::size_t n);
  // sum |z_j|
  double (*sum_abs)(const cplx* z, std::size_t n);
  // sum w_j |z_j|^2
  double (*sum_weighted_abs2)(const cplx* z, const double* w, std::size_t n);
  // out[j] = |z_j|
  void (*modulus)(const cplx* z, double* out, std::size_t n);
  // data[j] *= (c_j + i s_j)
  void (*rotate)(cplx* data, const double* c, const double* s, std::size_t n);
};

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();

/// Table used by the library; resolved once on first call.
const KernelTable& active_kernels();

// Span front-ends over the active table.
void cmul(std::span<cplx> data, std::span<const cplx> factors);
void scale(std::span<cplx> data, double factor);
double sum_abs2(std::span<const cplx> z);
double sum_abs(std::span<const cplx> z);
double sum_weighted_abs2(std::span<const cplx> z, std::span<const double> w);
void modulus(std::span<const cplx> z, std::span<double> out);
void rotate(std::span<cplx> data, std::span<const double> c, std::span<const double> s);

namespace detail {
// Raw kernels, exposed for the dispatch table and equivalence tests.
const KernelTable& avx2_table();
}  // namespace detail

}  // namespace lenssplit::simd
