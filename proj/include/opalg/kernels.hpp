#pragma once

#include <complex>
#include <cstddef>

// Low-level complex-array kernels behind the matrix type. Every kernel has a
// portable scalar reference implementation and, on x86-64, an AVX2+FMA variant.
// The public entry points dispatch through function pointers selected once at
// startup from cpuid (override with OPALG_KERNELS=scalar|avx2 in the
// environment). Scalar and SIMD paths are equivalence-tested against each
// other in the test suite.

namespace opalg::kernels {

using Complex = std::complex<double>;

// z = x + y, elementwise, length n.
void add(Complex* z, const Complex* x, const Complex* y, std::size_t n);
// z = x - y.
void sub(Complex* z, const Complex* x, const Complex* y, std::size_t n);
// z = a * x.
void scale(Complex* z, Complex a, const Complex* x, std::size_t n);
// z += a * x.
void axpy(Complex* z, Complex a, const Complex* x, std::size_t n);
// sum_i conj(x_i) * y_i.
Complex dotc(const Complex* x, const Complex* y, std::size_t n);
// C = A * B with A m-by-k, B k-by-n, C m-by-n, all row-major. C is overwritten.
void gemm(Complex* c, const Complex* a, const Complex* b,
          std::size_t m, std::size_t k, std::size_t n);

// Name of the backend the dispatcher selected ("avx2" or "scalar").
const char* active_backend();

namespace scalar {
void add(Complex* z, const Complex* x, const Complex* y, std::size_t n);
void sub(Complex* z, const Complex* x, const Complex* y, std::size_t n);
void scale(Complex* z, Complex a, const Complex* x, std::size_t n);
void axpy(Complex* z, Complex a, const Complex* x, std::size_t n);
Complex dotc(const Complex* x, const Complex* y, std::size_t n);
void gemm(Complex* c, const Complex* a, const Complex* b,
          std::size_t m, std::size_t k, std::size_t n);
}  // namespace scalar

namespace avx2 {
// True when the binary carries the AVX2 translation unit and the CPU
// reports avx2+fma. The remaining symbols exist only in that build.
bool available();
#ifdef OPALG_HAVE_AVX2
void add(Complex* z, const Complex* x, const Complex* y, std::size_t n);
void sub(Complex* z, const Complex* x, const Complex* y, std::size_t n);
void scale(Complex* z, Complex a, const Complex* x, std::size_t n);
void axpy(Complex* z, Complex a, const Complex* x, std::size_t n);
Complex dotc(const Complex* x, const Complex* y, std::size_t n);
void gemm(Complex* c, const Complex* a, const Complex* b,
          std::size_t m, std::size_t k, std::size_t n);
#endif
}  // namespace avx2

}  // namespace opalg::kernels
