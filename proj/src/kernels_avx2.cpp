#include "opalg/kernels.hpp"

#include <immintrin.h>

#include <cstring>

// AVX2 variants of the complex-array kernels. A std::complex<double> array is
// accessed as interleaved doubles [re0, im0, re1, im1, ...]; one 256-bit lane
// holds two complex values. Complex multiply-accumulate uses the
// permute + fmaddsub idiom: with b = [br, bi] and scalar a = ar + i*ai,
// fmaddsub(ar, b, ai*swap(b)) = [ar*br - ai*bi, ar*bi + ai*br].

namespace opalg::kernels::avx2 {

bool available() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

inline const double* dp(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(Complex* p) { return reinterpret_cast<double*>(p); }

// z[0..2n) = a * x[0..2n) as interleaved complex doubles, accumulate when Acc.
template <bool Acc>
inline void scale_impl(Complex* z, Complex a, const Complex* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    const double* xs = dp(x);
    double* zs = dp(z);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d b = _mm256_loadu_pd(xs + 2 * i);
        __m256d bswap = _mm256_permute_pd(b, 0x5);
        __m256d t = _mm256_mul_pd(ai, bswap);
        __m256d r = _mm256_fmaddsub_pd(ar, b, t);
        if constexpr (Acc) r = _mm256_add_pd(_mm256_loadu_pd(zs + 2 * i), r);
        _mm256_storeu_pd(zs + 2 * i, r);
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const Complex v(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
        if constexpr (Acc)
            z[i] += v;
        else
            z[i] = v;
    }
}

}  // namespace

void add(Complex* z, const Complex* x, const Complex* y, std::size_t n) {
    const std::size_t d = 2 * n;
    const double* xs = dp(x);
    const double* ys = dp(y);
    double* zs = dp(z);
    std::size_t i = 0;
    for (; i + 4 <= d; i += 4)
        _mm256_storeu_pd(zs + i, _mm256_add_pd(_mm256_loadu_pd(xs + i), _mm256_loadu_pd(ys + i)));
    for (; i < d; ++i) zs[i] = xs[i] + ys[i];
}

void sub(Complex* z, const Complex* x, const Complex* y, std::size_t n) {
    const std::size_t d = 2 * n;
    const double* xs = dp(x);
    const double* ys = dp(y);
    double* zs = dp(z);
    std::size_t i = 0;
    for (; i + 4 <= d; i += 4)
        _mm256_storeu_pd(zs + i, _mm256_sub_pd(_mm256_loadu_pd(xs + i), _mm256_loadu_pd(ys + i)));
    for (; i < d; ++i) zs[i] = xs[i] - ys[i];
}

void scale(Complex* z, Complex a, const Complex* x, std::size_t n) {
    scale_impl<false>(z, a, x, n);
}

void axpy(Complex* z, Complex a, const Complex* x, std::size_t n) {
    scale_impl<true>(z, a, x, n);
}

Complex dotc(const Complex* x, const Complex* y, std::size_t n) {
    // acc1 accumulates [xr*yr, xi*yi, ...]; acc2 accumulates [xr*yi, xi*yr, ...].
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    const double* xs = dp(x);
    const double* ys = dp(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xs + 2 * i);
        __m256d yv = _mm256_loadu_pd(ys + 2 * i);
        acc1 = _mm256_fmadd_pd(xv, yv, acc1);
        acc2 = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), acc2);
    }
    alignas(32) double a1[4], a2[4];
    _mm256_store_pd(a1, acc1);
    _mm256_store_pd(a2, acc2);
    double re = a1[0] + a1[1] + a1[2] + a1[3];
    double im = (a2[0] - a2[1]) + (a2[2] - a2[3]);
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

void gemm(Complex* c, const Complex* a, const Complex* b,
          std::size_t m, std::size_t k, std::size_t n) {
    std::memset(static_cast<void*>(c), 0, m * n * sizeof(Complex));
    for (std::size_t i = 0; i < m; ++i) {
        Complex* crow = c + i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const Complex ail = a[i * k + l];
            if (ail.real() == 0.0 && ail.imag() == 0.0) continue;
            axpy(crow, ail, b + l * n, n);
        }
    }
}

}  // namespace opalg::kernels::avx2
