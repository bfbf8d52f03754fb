#include "opalg/matrix.hpp"

#include <cmath>

#include "opalg/errors.hpp"
#include "opalg/kernels.hpp"

namespace opalg {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (!same_shape(rhs)) throw ShapeMismatch("matrix addition: shapes differ");
    kernels::add(data(), data(), rhs.data(), size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (!same_shape(rhs)) throw ShapeMismatch("matrix subtraction: shapes differ");
    kernels::sub(data(), data(), rhs.data(), size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex a) {
    kernels::scale(data(), a, data(), size());
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < size(); ++i) r.data()[i] = std::conj(data_[i]);
    return r;
}

Complex ComplexMatrix::trace() const {
    if (rows_ != cols_) throw ShapeMismatch("trace of a non-square matrix");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::kron(const ComplexMatrix& rhs) const {
    ComplexMatrix r(rows_ * rhs.rows_, cols_ * rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Complex a = (*this)(i, j);
            if (a == Complex(0.0)) continue;
            for (std::size_t k = 0; k < rhs.rows_; ++k)
                for (std::size_t l = 0; l < rhs.cols_; ++l)
                    r(i * rhs.rows_ + k, j * rhs.cols_ + l) = a * rhs(k, l);
        }
    return r;
}

ComplexMatrix ComplexMatrix::block(std::size_t row0, std::size_t col0,
                                   std::size_t rows, std::size_t cols) const {
    if (row0 + rows > rows_ || col0 + cols > cols_)
        throw ShapeMismatch("block extraction out of range");
    ComplexMatrix r(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r(i, j) = (*this)(row0 + i, col0 + j);
    return r;
}

void ComplexMatrix::set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b) {
    if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_)
        throw ShapeMismatch("block assignment out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r = a;
    r += b;
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r = a;
    r -= b;
    return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matrix product: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    kernels::gemm(c.data(), a.data(), b.data(), a.rows(), a.cols(), b.cols());
    return c;
}

ComplexMatrix operator*(Complex a, const ComplexMatrix& m) {
    ComplexMatrix r = m;
    r *= a;
    return r;
}

std::vector<Complex> operator*(const ComplexMatrix& a, const std::vector<Complex>& v) {
    if (a.cols() != v.size()) throw ShapeMismatch("matrix-vector product: dimensions differ");
    std::vector<Complex> r(a.rows());
    kernels::gemm(r.data(), a.data(), v.data(), a.rows(), a.cols(), 1);
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw ShapeMismatch("max_abs_diff: shapes differ");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

}  // namespace opalg
