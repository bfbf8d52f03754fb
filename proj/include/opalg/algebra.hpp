#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "opalg/matrix.hpp"

namespace opalg {

/// A finite-dimensional C*-algebra presented as a direct sum of full matrix
/// blocks M_{n_1} ⊕ ... ⊕ M_{n_k}. Identified by its ordered block dimensions.
class FdCStarAlgebra {
public:
    explicit FdCStarAlgebra(std::vector<std::size_t> block_dims);

    const std::vector<std::size_t>& block_dims() const { return dims_; }
    std::size_t num_blocks() const { return dims_.size(); }
    std::size_t block_dim(std::size_t b) const { return dims_[b]; }
    /// Sum of block dimensions (the size of the block-diagonal embedding).
    std::size_t total_dim() const { return total_; }
    /// Dimension as a complex vector space, sum of squared block dimensions.
    std::size_t vec_dim() const { return vec_; }
    /// True when every block is one-dimensional.
    bool commutative() const;

    /// Row/column offset of block b inside the total_dim embedding.
    std::size_t block_offset(std::size_t b) const { return block_off_[b]; }
    /// Offset of block b's coefficients inside a vectorized element.
    std::size_t vec_offset(std::size_t b) const { return vec_off_[b]; }

    /// Coefficient index of the matrix unit E_{ij} of block b. Units are
    /// ordered lexicographically by (block, row, column); this ordering is the
    /// global vectorization convention used by every superoperator matrix.
    std::size_t unit_index(std::size_t b, std::size_t i, std::size_t j) const {
        return vec_off_[b] + i * dims_[b] + j;
    }
    /// Block and in-block position of a coefficient index.
    struct UnitPos {
        std::size_t block, row, col;
    };
    UnitPos unit_pos(std::size_t index) const;
    /// Index of the adjoint-partner unit E_{ji} for the unit at `index`.
    std::size_t transpose_index(std::size_t index) const;

    bool operator==(const FdCStarAlgebra& rhs) const { return dims_ == rhs.dims_; }
    bool operator!=(const FdCStarAlgebra& rhs) const { return !(*this == rhs); }

    std::string describe() const;

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> block_off_;
    std::vector<std::size_t> vec_off_;
    std::size_t total_ = 0;
    std::size_t vec_ = 0;
};

FdCStarAlgebra make_algebra(const std::vector<std::size_t>& block_dims);

/// An element of an FdCStarAlgebra: one complex matrix per block.
class AlgebraElement {
public:
    AlgebraElement(FdCStarAlgebra algebra, std::vector<ComplexMatrix> blocks);

    static AlgebraElement zero(const FdCStarAlgebra& a);
    static AlgebraElement identity(const FdCStarAlgebra& a);
    /// The matrix-unit basis element with coefficient index `index`.
    static AlgebraElement unit(const FdCStarAlgebra& a, std::size_t index);

    const FdCStarAlgebra& algebra() const { return algebra_; }
    const ComplexMatrix& block(std::size_t b) const { return blocks_[b]; }
    ComplexMatrix& block(std::size_t b) { return blocks_[b]; }
    std::size_t num_blocks() const { return blocks_.size(); }

    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement& operator-=(const AlgebraElement& rhs);
    AlgebraElement& operator*=(Complex a);
    AlgebraElement adjoint() const;

    Complex trace() const;
    double max_abs() const;
    double frobenius_norm() const;

    /// Coefficients in the matrix-unit basis, the global vectorization order.
    std::vector<Complex> vectorize() const;
    static AlgebraElement from_vector(const FdCStarAlgebra& a, const std::vector<Complex>& v);

private:
    FdCStarAlgebra algebra_;
    std::vector<ComplexMatrix> blocks_;
};

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(Complex a, const AlgebraElement& x);
double max_abs_diff(const AlgebraElement& x, const AlgebraElement& y);

/// Verdict of the positivity test, with a witness on failure.
struct PositivityReport {
    enum class Failure { none, not_hermitian, negative_eigenvalue };
    bool positive = false;
    Failure failure = Failure::none;
    /// Offending block (for negative_eigenvalue or not_hermitian).
    std::size_t block = 0;
    /// Most negative eigenvalue, or the Hermiticity defect.
    double value = 0.0;
};

/// x is positive when it is Hermitian within tol and every block's minimum
/// eigenvalue is >= -tol * (1 + spectral norm of x).
PositivityReport is_positive_element(const AlgebraElement& x, double tol = 1e-9);

/// Spectral split of a Hermitian element into orthogonal positive parts:
/// x = x_plus - x_minus with x_plus * x_minus = 0. Throws NotHermitian.
std::pair<AlgebraElement, AlgebraElement> positive_decomposition(const AlgebraElement& x,
                                                                 double tol = 1e-9);

/// The algebra M_n(A) of n-by-n grids over A, with the grid <-> element
/// translation. Block b of M_n(A) has dimension n * dims[b]; grid cell (u, v)
/// of block b sits at rows [u*d_b, (u+1)*d_b) x cols [v*d_b, (v+1)*d_b).
class MatrixExtension {
public:
    MatrixExtension(FdCStarAlgebra base, std::size_t n);

    const FdCStarAlgebra& base() const { return base_; }
    const FdCStarAlgebra& extended() const { return ext_; }
    std::size_t n() const { return n_; }

    AlgebraElement embed(const std::vector<std::vector<AlgebraElement>>& grid) const;
    std::vector<std::vector<AlgebraElement>> extract(const AlgebraElement& x) const;

    /// The compression v^* y v of a grid element y by a vector v in C^n,
    /// an element of the base algebra.
    AlgebraElement compress(const AlgebraElement& y, const std::vector<Complex>& v) const;

private:
    FdCStarAlgebra base_;
    std::size_t n_;
    FdCStarAlgebra ext_;
};

MatrixExtension matrix_algebra_over(const FdCStarAlgebra& a, std::size_t n);

}  // namespace opalg
