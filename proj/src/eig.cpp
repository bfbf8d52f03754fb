#include "opalg/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "opalg/errors.hpp"

namespace opalg {

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

HermitianEig jacobi_eig(const ComplexMatrix& input, ComplexMatrix& v) {
    const std::size_t n = input.rows();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));

    v = ComplexMatrix::identity(n);
    const double stop = 1e-15 * (1.0 + a.frobenius_norm());

    for (int sweep = 0; sweep < 100 && offdiag_norm(a) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const Complex u = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                double t;
                if (tau == 0.0)
                    t = 1.0;
                else
                    t = (tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary 2x2 factor G = diag(u,1) * [[c, s], [-s, c]].
                const Complex g11 = u * c, g12 = u * s;
                const Complex g21 = -s, g22 = c;
                for (std::size_t i = 0; i < n; ++i) {  // A <- A G
                    const Complex tp = a(i, p), tq = a(i, q);
                    a(i, p) = tp * g11 + tq * g21;
                    a(i, q) = tp * g12 + tq * g22;
                }
                for (std::size_t j = 0; j < n; ++j) {  // A <- G^† A
                    const Complex tp = a(p, j), tq = a(q, j);
                    a(p, j) = std::conj(g11) * tp + std::conj(g21) * tq;
                    a(q, j) = std::conj(g12) * tp + std::conj(g22) * tq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t i = 0; i < n; ++i) {  // V <- V G
                    const Complex tp = v(i, p), tq = v(i, q);
                    v(i, p) = tp * g11 + tq * g21;
                    v(i, q) = tp * g12 + tq * g22;
                }
            }
        }
    }

    HermitianEig out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i).real();
    return out;
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeMismatch("eigendecomposition of a non-square matrix");
    const std::size_t n = a.rows();
    ComplexMatrix v;
    HermitianEig raw = jacobi_eig(a, v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return raw.values[x] < raw.values[y]; });

    HermitianEig out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = raw.values[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

double min_eigenvalue(const ComplexMatrix& a) {
    return hermitian_eig(a).values.front();
}

}  // namespace opalg
