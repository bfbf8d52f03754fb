#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace opalg {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Arithmetic routes through the kernel layer.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex a);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    Complex trace() const;
    double max_abs() const;
    double frobenius_norm() const;

    /// Kronecker product, this as the left factor.
    ComplexMatrix kron(const ComplexMatrix& rhs) const;

    ComplexMatrix block(std::size_t row0, std::size_t col0,
                        std::size_t rows, std::size_t cols) const;
    void set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b);

    bool same_shape(const ComplexMatrix& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex a, const ComplexMatrix& m);
std::vector<Complex> operator*(const ComplexMatrix& a, const std::vector<Complex>& v);

/// Largest entrywise deviation; the shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace opalg
