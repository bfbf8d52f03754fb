#include "opalg/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace opalg::kernels {

namespace scalar {

void add(Complex* z, const Complex* x, const Complex* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] = x[i] + y[i];
}

void sub(Complex* z, const Complex* x, const Complex* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) z[i] = x[i] - y[i];
}

void scale(Complex* z, Complex a, const Complex* x, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        z[i] = Complex(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void axpy(Complex* z, Complex a, const Complex* x, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        z[i] += Complex(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

Complex dotc(const Complex* x, const Complex* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
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

}  // namespace scalar

namespace {

struct Dispatch {
    void (*add)(Complex*, const Complex*, const Complex*, std::size_t);
    void (*sub)(Complex*, const Complex*, const Complex*, std::size_t);
    void (*scale)(Complex*, Complex, const Complex*, std::size_t);
    void (*axpy)(Complex*, Complex, const Complex*, std::size_t);
    Complex (*dotc)(const Complex*, const Complex*, std::size_t);
    void (*gemm)(Complex*, const Complex*, const Complex*, std::size_t, std::size_t, std::size_t);
    const char* name;
};

Dispatch select_backend() {
    const char* forced = std::getenv("OPALG_KERNELS");
    const bool want_scalar = forced != nullptr && std::strcmp(forced, "scalar") == 0;
#ifdef OPALG_HAVE_AVX2
    if (!want_scalar && avx2::available()) {
        return {avx2::add, avx2::sub, avx2::scale, avx2::axpy, avx2::dotc, avx2::gemm, "avx2"};
    }
#endif
    (void)want_scalar;
    return {scalar::add, scalar::sub, scalar::scale, scalar::axpy, scalar::dotc, scalar::gemm,
            "scalar"};
}

const Dispatch& backend() {
    static const Dispatch d = select_backend();
    return d;
}

}  // namespace

#ifndef OPALG_HAVE_AVX2
namespace avx2 {
bool available() { return false; }
}  // namespace avx2
#endif

void add(Complex* z, const Complex* x, const Complex* y, std::size_t n) {
    backend().add(z, x, y, n);
}
void sub(Complex* z, const Complex* x, const Complex* y, std::size_t n) {
    backend().sub(z, x, y, n);
}
void scale(Complex* z, Complex a, const Complex* x, std::size_t n) {
    backend().scale(z, a, x, n);
}
void axpy(Complex* z, Complex a, const Complex* x, std::size_t n) {
    backend().axpy(z, a, x, n);
}
Complex dotc(const Complex* x, const Complex* y, std::size_t n) {
    return backend().dotc(x, y, n);
}
void gemm(Complex* c, const Complex* a, const Complex* b,
          std::size_t m, std::size_t k, std::size_t n) {
    backend().gemm(c, a, b, m, k, n);
}
const char* active_backend() { return backend().name; }

}  // namespace opalg::kernels
