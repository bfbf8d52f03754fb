#include "opalg/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "opalg/eig.hpp"
#include "opalg/errors.hpp"

namespace opalg {

FdCStarAlgebra::FdCStarAlgebra(std::vector<std::size_t> block_dims) : dims_(std::move(block_dims)) {
    if (dims_.empty()) throw EmptyBlockList();
    block_off_.reserve(dims_.size());
    vec_off_.reserve(dims_.size());
    for (std::size_t d : dims_) {
        if (d == 0) throw NonPositiveBlockDim("block dimensions must be >= 1");
        block_off_.push_back(total_);
        vec_off_.push_back(vec_);
        total_ += d;
        vec_ += d * d;
    }
}

bool FdCStarAlgebra::commutative() const {
    return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 1; });
}

FdCStarAlgebra::UnitPos FdCStarAlgebra::unit_pos(std::size_t index) const {
    std::size_t b = dims_.size() - 1;
    while (vec_off_[b] > index) --b;
    const std::size_t rem = index - vec_off_[b];
    return {b, rem / dims_[b], rem % dims_[b]};
}

std::size_t FdCStarAlgebra::transpose_index(std::size_t index) const {
    const UnitPos p = unit_pos(index);
    return unit_index(p.block, p.col, p.row);
}

std::string FdCStarAlgebra::describe() const {
    std::string s = "(";
    for (std::size_t b = 0; b < dims_.size(); ++b) {
        if (b) s += ",";
        s += std::to_string(dims_[b]);
    }
    s += ")";
    return s;
}

FdCStarAlgebra make_algebra(const std::vector<std::size_t>& block_dims) {
    return FdCStarAlgebra(block_dims);
}

AlgebraElement::AlgebraElement(FdCStarAlgebra algebra, std::vector<ComplexMatrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (blocks_.size() != algebra_.num_blocks())
        throw ShapeMismatch("element block count differs from the algebra's");
    for (std::size_t b = 0; b < blocks_.size(); ++b)
        if (blocks_[b].rows() != algebra_.block_dim(b) || blocks_[b].cols() != algebra_.block_dim(b))
            throw ShapeMismatch("element block " + std::to_string(b) +
                                " does not match the algebra dimension");
}

AlgebraElement AlgebraElement::zero(const FdCStarAlgebra& a) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(a.num_blocks());
    for (std::size_t b = 0; b < a.num_blocks(); ++b)
        blocks.emplace_back(a.block_dim(b), a.block_dim(b));
    return {a, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const FdCStarAlgebra& a) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(a.num_blocks());
    for (std::size_t b = 0; b < a.num_blocks(); ++b)
        blocks.push_back(ComplexMatrix::identity(a.block_dim(b)));
    return {a, std::move(blocks)};
}

AlgebraElement AlgebraElement::unit(const FdCStarAlgebra& a, std::size_t index) {
    AlgebraElement e = zero(a);
    const FdCStarAlgebra::UnitPos p = a.unit_pos(index);
    e.block(p.block)(p.row, p.col) = 1.0;
    return e;
}

namespace {
void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y, const char* op) {
    if (x.algebra() != y.algebra())
        throw AlgebraMismatch(std::string(op) + ": operands live in different algebras");
}
}  // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
    require_same_algebra(*this, rhs, "add");
    for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] += rhs.blocks_[b];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
    require_same_algebra(*this, rhs, "sub");
    for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] -= rhs.blocks_[b];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex a) {
    for (ComplexMatrix& m : blocks_) m *= a;
    return *this;
}

AlgebraElement AlgebraElement::adjoint() const {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(blocks_.size());
    for (const ComplexMatrix& m : blocks_) blocks.push_back(m.adjoint());
    return {algebra_, std::move(blocks)};
}

Complex AlgebraElement::trace() const {
    Complex t = 0.0;
    for (const ComplexMatrix& m : blocks_) t += m.trace();
    return t;
}

double AlgebraElement::max_abs() const {
    double m = 0.0;
    for (const ComplexMatrix& b : blocks_) m = std::max(m, b.max_abs());
    return m;
}

double AlgebraElement::frobenius_norm() const {
    double s = 0.0;
    for (const ComplexMatrix& b : blocks_) {
        const double f = b.frobenius_norm();
        s += f * f;
    }
    return std::sqrt(s);
}

std::vector<Complex> AlgebraElement::vectorize() const {
    std::vector<Complex> v;
    v.reserve(algebra_.vec_dim());
    for (const ComplexMatrix& b : blocks_) v.insert(v.end(), b.data(), b.data() + b.size());
    return v;
}

AlgebraElement AlgebraElement::from_vector(const FdCStarAlgebra& a, const std::vector<Complex>& v) {
    if (v.size() != a.vec_dim()) throw ShapeMismatch("coefficient vector has the wrong length");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(a.num_blocks());
    std::size_t pos = 0;
    for (std::size_t b = 0; b < a.num_blocks(); ++b) {
        const std::size_t d = a.block_dim(b);
        ComplexMatrix m(d, d);
        std::copy(v.begin() + pos, v.begin() + pos + d * d, m.data());
        pos += d * d;
        blocks.push_back(std::move(m));
    }
    return {a, std::move(blocks)};
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
    AlgebraElement r = x;
    r += y;
    return r;
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
    AlgebraElement r = x;
    r -= y;
    return r;
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_algebra(x, y, "mul");
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(x.num_blocks());
    for (std::size_t b = 0; b < x.num_blocks(); ++b) blocks.push_back(x.block(b) * y.block(b));
    return {x.algebra(), std::move(blocks)};
}

AlgebraElement operator*(Complex a, const AlgebraElement& x) {
    AlgebraElement r = x;
    r *= a;
    return r;
}

double max_abs_diff(const AlgebraElement& x, const AlgebraElement& y) {
    require_same_algebra(x, y, "max_abs_diff");
    double m = 0.0;
    for (std::size_t b = 0; b < x.num_blocks(); ++b)
        m = std::max(m, max_abs_diff(x.block(b), y.block(b)));
    return m;
}

namespace {

double hermiticity_defect(const AlgebraElement& x, std::size_t& worst_block) {
    double worst = 0.0;
    worst_block = 0;
    for (std::size_t b = 0; b < x.num_blocks(); ++b) {
        const double d = max_abs_diff(x.block(b), x.block(b).adjoint());
        if (d > worst) {
            worst = d;
            worst_block = b;
        }
    }
    return worst;
}

AlgebraElement symmetrize(const AlgebraElement& x) {
    AlgebraElement h = x;
    for (std::size_t b = 0; b < h.num_blocks(); ++b) {
        ComplexMatrix m = 0.5 * (x.block(b) + x.block(b).adjoint());
        h.block(b) = std::move(m);
    }
    return h;
}

}  // namespace

PositivityReport is_positive_element(const AlgebraElement& x, double tol) {
    PositivityReport rep;
    std::size_t worst_block = 0;
    const double defect = hermiticity_defect(x, worst_block);
    if (defect > tol * (1.0 + x.max_abs())) {
        rep.positive = false;
        rep.failure = PositivityReport::Failure::not_hermitian;
        rep.block = worst_block;
        rep.value = defect;
        return rep;
    }

    const AlgebraElement h = symmetrize(x);
    std::vector<std::vector<double>> spectra(h.num_blocks());
    double spectral_norm = 0.0;
    for (std::size_t b = 0; b < h.num_blocks(); ++b) {
        spectra[b] = hermitian_eig(h.block(b)).values;
        spectral_norm = std::max(spectral_norm,
                                 std::max(std::abs(spectra[b].front()), std::abs(spectra[b].back())));
    }
    double min_eig = spectra[0].front();
    std::size_t min_block = 0;
    for (std::size_t b = 1; b < spectra.size(); ++b)
        if (spectra[b].front() < min_eig) {
            min_eig = spectra[b].front();
            min_block = b;
        }
    if (min_eig < -tol * (1.0 + spectral_norm)) {
        rep.positive = false;
        rep.failure = PositivityReport::Failure::negative_eigenvalue;
        rep.block = min_block;
        rep.value = min_eig;
        return rep;
    }
    rep.positive = true;
    rep.value = min_eig;
    return rep;
}

std::pair<AlgebraElement, AlgebraElement> positive_decomposition(const AlgebraElement& x,
                                                                 double tol) {
    std::size_t worst_block = 0;
    const double defect = hermiticity_defect(x, worst_block);
    if (defect > tol * (1.0 + x.max_abs()))
        throw NotHermitian("positive_decomposition: defect " + std::to_string(defect) +
                           " in block " + std::to_string(worst_block));

    AlgebraElement plus = AlgebraElement::zero(x.algebra());
    AlgebraElement minus = AlgebraElement::zero(x.algebra());
    const AlgebraElement h = symmetrize(x);
    for (std::size_t b = 0; b < h.num_blocks(); ++b) {
        const HermitianEig eig = hermitian_eig(h.block(b));
        const std::size_t d = h.block(b).rows();
        ComplexMatrix dplus(d, d), dminus(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            if (eig.values[i] >= 0.0)
                dplus(i, i) = eig.values[i];
            else
                dminus(i, i) = -eig.values[i];
        }
        const ComplexMatrix vh = eig.vectors.adjoint();
        plus.block(b) = eig.vectors * dplus * vh;
        minus.block(b) = eig.vectors * dminus * vh;
    }
    return {plus, minus};
}

MatrixExtension::MatrixExtension(FdCStarAlgebra base, std::size_t n)
    : base_(std::move(base)), n_(n), ext_([&] {
          if (n == 0) throw NonPositiveBlockDim("matrix algebra order must be >= 1");
          std::vector<std::size_t> dims;
          dims.reserve(base_.num_blocks());
          for (std::size_t d : base_.block_dims()) dims.push_back(n * d);
          return FdCStarAlgebra(dims);
      }()) {}

AlgebraElement MatrixExtension::embed(const std::vector<std::vector<AlgebraElement>>& grid) const {
    if (grid.size() != n_) throw ShapeMismatch("grid has the wrong number of rows");
    for (const auto& row : grid) {
        if (row.size() != n_) throw ShapeMismatch("grid has a ragged row");
        for (const AlgebraElement& cell : row)
            if (cell.algebra() != base_)
                throw AlgebraMismatch("grid cell lives in the wrong algebra");
    }
    AlgebraElement x = AlgebraElement::zero(ext_);
    for (std::size_t b = 0; b < base_.num_blocks(); ++b) {
        const std::size_t d = base_.block_dim(b);
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v = 0; v < n_; ++v)
                x.block(b).set_block(u * d, v * d, grid[u][v].block(b));
    }
    return x;
}

std::vector<std::vector<AlgebraElement>> MatrixExtension::extract(const AlgebraElement& x) const {
    if (x.algebra() != ext_) throw AlgebraMismatch("element does not live in the matrix extension");
    std::vector<std::vector<AlgebraElement>> grid(
        n_, std::vector<AlgebraElement>(n_, AlgebraElement::zero(base_)));
    for (std::size_t b = 0; b < base_.num_blocks(); ++b) {
        const std::size_t d = base_.block_dim(b);
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v = 0; v < n_; ++v)
                grid[u][v].block(b) = x.block(b).block(u * d, v * d, d, d);
    }
    return grid;
}

AlgebraElement MatrixExtension::compress(const AlgebraElement& y,
                                         const std::vector<Complex>& v) const {
    if (y.algebra() != ext_) throw AlgebraMismatch("element does not live in the matrix extension");
    if (v.size() != n_) throw ShapeMismatch("compression vector has the wrong length");
    AlgebraElement out = AlgebraElement::zero(base_);
    const auto grid = extract(y);
    for (std::size_t u = 0; u < n_; ++u)
        for (std::size_t w = 0; w < n_; ++w) {
            const Complex coeff = std::conj(v[u]) * v[w];
            if (coeff == Complex(0.0)) continue;
            out += coeff * grid[u][w];
        }
    return out;
}

MatrixExtension matrix_algebra_over(const FdCStarAlgebra& a, std::size_t n) {
    return {a, n};
}

}  // namespace opalg
