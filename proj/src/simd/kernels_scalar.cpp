#include <cmath>

#include "lenssplit/simd/kernels.hpp"

namespace lenssplit::simd {
namespace {

void cmul_scalar(cplx* data, const cplx* factors, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double ar = data[j].real(), ai = data[j].imag();
    const double br = factors[j].real(), bi = factors[j].imag();
    data[j] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void scale_scalar(cplx* data, double factor, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) data[j] = cplx(data[j].real() * factor, data[j].imag() * factor);
}

double sum_abs2_scalar(const cplx* z, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += z[j].real() * z[j].real() + z[j].imag() * z[j].imag();
  return acc;
}

double sum_abs_scalar(const cplx* z, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += std::sqrt(z[j].real() * z[j].real() + z[j].imag() * z[j].imag());
  return acc;
}

double sum_weighted_abs2_scalar(const cplx* z, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    acc += w[j] * (z[j].real() * z[j].real() + z[j].imag() * z[j].imag());
  return acc;
}

void modulus_scalar(const cplx* z, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = std::sqrt(z[j].real() * z[j].real() + z[j].imag() * z[j].imag());
}

void rotate_scalar(cplx* data, const double* c, const double* s, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double ar = data[j].real(), ai = data[j].imag();
    data[j] = cplx(ar * c[j] - ai * s[j], ar * s[j] + ai * c[j]);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      Isa::Scalar,       "scalar",         cmul_scalar,   scale_scalar, sum_abs2_scalar,
      sum_abs_scalar,    sum_weighted_abs2_scalar, modulus_scalar, rotate_scalar,
  };
  return table;
}

}  // namespace lenssplit::simd
