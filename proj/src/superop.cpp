#include "opalg/superop.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "opalg/eig.hpp"
#include "opalg/errors.hpp"

namespace opalg {

namespace {

AlgebraElement element_from_column(const FdCStarAlgebra& a, const ComplexMatrix& action,
                                   std::size_t col) {
    std::vector<Complex> v(a.vec_dim());
    for (std::size_t r = 0; r < v.size(); ++r) v[r] = action(r, col);
    return AlgebraElement::from_vector(a, v);
}

}  // namespace

SuperOperator::SuperOperator(FdCStarAlgebra domain, FdCStarAlgebra codomain, ComplexMatrix action)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), action_(std::move(action)) {
    if (action_.rows() != codomain_.vec_dim() || action_.cols() != domain_.vec_dim())
        throw ShapeMismatch("superoperator action matrix does not match the algebras");
}

SuperOperator SuperOperator::identity(const FdCStarAlgebra& a) {
    return {a, a, ComplexMatrix::identity(a.vec_dim())};
}

SuperOperator SuperOperator::zero(const FdCStarAlgebra& domain, const FdCStarAlgebra& codomain) {
    return {domain, codomain, ComplexMatrix(codomain.vec_dim(), domain.vec_dim())};
}

SuperOperator SuperOperator::from_function(
    const FdCStarAlgebra& domain, const FdCStarAlgebra& codomain,
    const std::function<AlgebraElement(const AlgebraElement&)>& fn) {
    ComplexMatrix action(codomain.vec_dim(), domain.vec_dim());
    for (std::size_t col = 0; col < domain.vec_dim(); ++col) {
        const AlgebraElement y = fn(AlgebraElement::unit(domain, col));
        if (y.algebra() != codomain)
            throw AlgebraMismatch("from_function: image lives in the wrong algebra");
        const std::vector<Complex> v = y.vectorize();
        for (std::size_t r = 0; r < v.size(); ++r) action(r, col) = v[r];
    }
    return {domain, codomain, std::move(action)};
}

AlgebraElement SuperOperator::apply(const AlgebraElement& x) const {
    if (x.algebra() != domain_)
        throw AlgebraMismatch("apply: element does not live in the domain");
    return AlgebraElement::from_vector(codomain_, action_ * x.vectorize());
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& rhs) {
    if (domain_ != rhs.domain_ || codomain_ != rhs.codomain_)
        throw AlgebraMismatch("superoperator addition: endpoint algebras differ");
    action_ += rhs.action_;
    return *this;
}

SuperOperator& SuperOperator::operator*=(Complex a) {
    action_ *= a;
    return *this;
}

SuperOperator operator+(const SuperOperator& f, const SuperOperator& g) {
    SuperOperator r = f;
    r += g;
    return r;
}

SuperOperator operator-(const SuperOperator& f, const SuperOperator& g) {
    SuperOperator r = f;
    r += Complex(-1.0) * g;
    return r;
}

SuperOperator operator*(Complex a, const SuperOperator& f) {
    SuperOperator r = f;
    r *= a;
    return r;
}

SuperOperator compose(const SuperOperator& g, const SuperOperator& f) {
    if (f.codomain() != g.domain())
        throw AlgebraMismatch("compose: codomain of the inner map differs from the outer domain");
    return {f.domain(), g.codomain(), g.action() * f.action()};
}

SuperOperator identity_map(const FdCStarAlgebra& a) { return SuperOperator::identity(a); }

double sup_distance(const SuperOperator& f, const SuperOperator& g) {
    if (f.domain() != g.domain() || g.codomain() != f.codomain())
        throw AlgebraMismatch("sup_distance: endpoint algebras differ");
    return max_abs_diff(f.action(), g.action());
}

SuperOperator amplify(const SuperOperator& f, std::size_t n) {
    const MatrixExtension ext_dom(f.domain(), n);
    const MatrixExtension ext_cod(f.codomain(), n);
    const FdCStarAlgebra& dom = f.domain();
    const FdCStarAlgebra& cod = f.codomain();
    ComplexMatrix action(ext_cod.extended().vec_dim(), ext_dom.extended().vec_dim());

    for (std::size_t beta = 0; beta < dom.vec_dim(); ++beta) {
        const AlgebraElement image = element_from_column(cod, f.action(), beta);
        const FdCStarAlgebra::UnitPos p = dom.unit_pos(beta);
        const std::size_t db = dom.block_dim(p.block);
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                const std::size_t col = ext_dom.extended().unit_index(
                    p.block, u * db + p.row, v * db + p.col);
                for (std::size_t c = 0; c < cod.num_blocks(); ++c) {
                    const std::size_t ec = cod.block_dim(c);
                    for (std::size_t r = 0; r < ec; ++r)
                        for (std::size_t s = 0; s < ec; ++s) {
                            const Complex val = image.block(c)(r, s);
                            if (val == Complex(0.0)) continue;
                            action(ext_cod.extended().unit_index(c, u * ec + r, v * ec + s), col) =
                                val;
                        }
                }
            }
        }
    }
    return {ext_dom.extended(), ext_cod.extended(), std::move(action)};
}

SuperOperator conjugation_map(const ComplexMatrix& v) {
    if (v.rows() == 0 || v.cols() == 0)
        throw ShapeMismatch("conjugation_map: matrix must be non-empty");
    const FdCStarAlgebra dom({v.rows()});
    const FdCStarAlgebra cod({v.cols()});
    const ComplexMatrix vh = v.adjoint();
    return SuperOperator::from_function(dom, cod, [&](const AlgebraElement& x) {
        std::vector<ComplexMatrix> blocks{vh * x.block(0) * v};
        return AlgebraElement(cod, std::move(blocks));
    });
}

SuperOperator transpose_map(std::size_t n) {
    const FdCStarAlgebra a({n});
    return SuperOperator::from_function(a, a, [&](const AlgebraElement& x) {
        std::vector<ComplexMatrix> blocks{x.block(0).transpose()};
        return AlgebraElement(a, std::move(blocks));
    });
}

SuperOperator scalar_map(std::size_t n, double lambda) {
    if (lambda < 0.0) throw ShapeMismatch("scalar_map: the scalar must be nonnegative");
    const FdCStarAlgebra a({n});
    return Complex(lambda) * SuperOperator::identity(a);
}

SuperOperator block_embedding(const FdCStarAlgebra& a) {
    const FdCStarAlgebra full({a.total_dim()});
    const std::size_t d = a.total_dim();
    ComplexMatrix action(full.vec_dim(), a.vec_dim());
    for (std::size_t alpha = 0; alpha < a.vec_dim(); ++alpha) {
        const FdCStarAlgebra::UnitPos p = a.unit_pos(alpha);
        const std::size_t off = a.block_offset(p.block);
        action((off + p.row) * d + (off + p.col), alpha) = 1.0;
    }
    return {a, full, std::move(action)};
}

SuperOperator block_compression(const FdCStarAlgebra& a) {
    const FdCStarAlgebra full({a.total_dim()});
    const std::size_t d = a.total_dim();
    ComplexMatrix action(a.vec_dim(), full.vec_dim());
    for (std::size_t alpha = 0; alpha < a.vec_dim(); ++alpha) {
        const FdCStarAlgebra::UnitPos p = a.unit_pos(alpha);
        const std::size_t off = a.block_offset(p.block);
        action(alpha, (off + p.row) * d + (off + p.col)) = 1.0;
    }
    return {full, a, std::move(action)};
}

namespace {

void require_single_blocks(const SuperOperator& f, const char* op) {
    if (f.domain().num_blocks() != 1 || f.codomain().num_blocks() != 1)
        throw MultiBlockUnsupported(
            std::string(op) +
            ": direct-sum endpoints are handled via the state <-> CP-map correspondence");
}

}  // namespace

ComplexMatrix choi_of(const SuperOperator& f) {
    require_single_blocks(f, "choi_of");
    const std::size_t m = f.domain().block_dim(0);
    const std::size_t n = f.codomain().block_dim(0);
    ComplexMatrix c(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    c(i * n + k, j * n + l) = f.action()(k * n + l, i * m + j);
    return c;
}

SuperOperator map_from_choi(const ComplexMatrix& c, std::size_t m, std::size_t n) {
    if (c.rows() != m * n || c.cols() != m * n)
        throw ShapeMismatch("map_from_choi: matrix is not (m*n) x (m*n)");
    const FdCStarAlgebra dom({m});
    const FdCStarAlgebra cod({n});
    ComplexMatrix action(cod.vec_dim(), dom.vec_dim());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    action(k * n + l, i * m + j) = c(i * n + k, j * n + l);
    return {dom, cod, std::move(action)};
}

std::vector<ComplexMatrix> kraus_decomposition(const SuperOperator& f, double tol) {
    require_single_blocks(f, "kraus_decomposition");
    const std::size_t m = f.domain().block_dim(0);
    const std::size_t n = f.codomain().block_dim(0);
    const ComplexMatrix c = choi_of(f);
    const HermitianEig eig = hermitian_eig(c);
    const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    if (eig.values.front() < -tol * (1.0 + top))
        throw NotCompletelyPositive("kraus_decomposition: Choi matrix is not PSD",
                                    eig.values.front());
    std::vector<ComplexMatrix> kraus;
    for (std::size_t r = 0; r < eig.values.size(); ++r) {
        const double lambda = eig.values[r];
        if (lambda < tol * (1.0 + top)) continue;
        const double w = std::sqrt(lambda);
        ComplexMatrix v(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < n; ++k)
                v(i, k) = w * std::conj(eig.vectors(i * n + k, r));
        kraus.push_back(std::move(v));
    }
    return kraus;
}

SuperOperator map_from_kraus(const std::vector<ComplexMatrix>& kraus) {
    if (kraus.empty()) throw ShapeMismatch("map_from_kraus: empty operator list");
    const std::size_t m = kraus.front().rows();
    const std::size_t n = kraus.front().cols();
    for (const ComplexMatrix& v : kraus)
        if (v.rows() != m || v.cols() != n)
            throw ShapeMismatch("map_from_kraus: operators have inconsistent shapes");
    SuperOperator f = SuperOperator::zero(FdCStarAlgebra({m}), FdCStarAlgebra({n}));
    for (const ComplexMatrix& v : kraus) f += conjugation_map(v);
    return f;
}

namespace {

// CP of f: A -> B is equivalent to CP of iota_B o f o P_A between full matrix
// algebras, because P o iota = id and both iota and P are CP.
SuperOperator lift_to_matrix_algebras(const SuperOperator& f) {
    if (f.domain().num_blocks() == 1 && f.codomain().num_blocks() == 1) return f;
    return compose(block_embedding(f.codomain()),
                   compose(f, block_compression(f.domain())));
}

}  // namespace

CpReport is_completely_positive(const SuperOperator& f, double tol) {
    const SuperOperator lifted = lift_to_matrix_algebras(f);
    const ComplexMatrix c = choi_of(lifted);
    const HermitianEig eig = hermitian_eig(c);
    // Hermiticity defect of the Choi also rules out CP; fold it into the verdict.
    const double defect = max_abs_diff(c, c.adjoint());
    const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    CpReport rep;
    rep.min_choi_eigenvalue = eig.values.front();
    rep.witness.resize(c.rows());
    for (std::size_t i = 0; i < c.rows(); ++i) rep.witness[i] = eig.vectors(i, 0);
    rep.completely_positive = eig.values.front() >= -tol * (1.0 + top) &&
                              defect <= tol * (1.0 + c.max_abs());
    return rep;
}

namespace {

// Rank-one positive element assembled from a direction vector over the
// block-diagonal embedding: block b gets v_b v_b^*.
AlgebraElement blockwise_rank_one(const FdCStarAlgebra& a, const std::vector<Complex>& v) {
    AlgebraElement x = AlgebraElement::zero(a);
    for (std::size_t b = 0; b < a.num_blocks(); ++b) {
        const std::size_t off = a.block_offset(b);
        const std::size_t d = a.block_dim(b);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                x.block(b)(i, j) = v[off + i] * std::conj(v[off + j]);
    }
    return x;
}

// u^† z u with u indexed over the block-diagonal embedding of z's algebra.
Complex embedded_quadratic_form(const AlgebraElement& z, const std::vector<Complex>& u) {
    Complex q = 0.0;
    const FdCStarAlgebra& a = z.algebra();
    for (std::size_t b = 0; b < a.num_blocks(); ++b) {
        const std::size_t off = a.block_offset(b);
        const std::size_t d = a.block_dim(b);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                q += std::conj(u[off + i]) * z.block(b)(i, j) * u[off + j];
    }
    return q;
}

struct WitnessSearch {
    const SuperOperator& f;
    double tol;
    MapPositivityReport& rep;

    // True when x certifies non-positivity; fills the report if so.
    bool try_witness(const AlgebraElement& x) {
        const PositivityReport in = is_positive_element(x, tol);
        if (!in.positive) return false;
        const PositivityReport out = is_positive_element(f.apply(x), tol);
        if (out.positive) return false;
        rep.verdict = MapPositivityReport::Verdict::not_positive;
        rep.witness = x;
        rep.witness_eigenvalue = out.value;
        rep.certificate = out.failure == PositivityReport::Failure::not_hermitian
                              ? "image of the witness is not Hermitian"
                              : "image of the witness has a negative eigenvalue";
        return true;
    }
};

}  // namespace

MapPositivityReport is_positive_map(const SuperOperator& f, double tol, unsigned budget,
                                    std::uint64_t seed) {
    MapPositivityReport rep;
    const CpReport cp = is_completely_positive(f, tol);
    if (cp.completely_positive) {
        rep.verdict = MapPositivityReport::Verdict::positive;
        rep.certificate = "completely positive (Choi PSD), hence positive";
        return rep;
    }

    const FdCStarAlgebra& dom = f.domain();
    const FdCStarAlgebra& cod = f.codomain();
    WitnessSearch search{f, tol, rep};

    // Deterministic probes: the unit and all diagonal matrix units. For a
    // commutative domain the diagonal units generate the positive cone, so
    // together with the failed CP test (positive <=> CP at a commutative
    // endpoint) a violation is expected among them.
    if (search.try_witness(AlgebraElement::identity(dom))) return rep;
    for (std::size_t b = 0; b < dom.num_blocks(); ++b)
        for (std::size_t i = 0; i < dom.block_dim(b); ++i) {
            if (search.try_witness(AlgebraElement::unit(dom, dom.unit_index(b, i, i)))) return rep;
        }

    // Commutative codomain: each coordinate of f is a functional with an
    // explicit density; a non-positive density converts to a rank-one witness.
    if (cod.commutative()) {
        for (std::size_t b = 0; b < cod.num_blocks(); ++b) {
            const std::size_t row = cod.unit_index(b, 0, 0);
            std::vector<Complex> rho(dom.vec_dim());
            for (std::size_t beta = 0; beta < dom.vec_dim(); ++beta)
                rho[beta] = f.action()(row, dom.transpose_index(beta));
            const AlgebraElement density = AlgebraElement::from_vector(dom, rho);
            const PositivityReport prep = is_positive_element(density, tol);
            if (prep.positive) continue;
            const std::size_t blk = prep.block;
            ComplexMatrix h(dom.block_dim(blk), dom.block_dim(blk));
            std::size_t col = 0;
            if (prep.failure == PositivityReport::Failure::not_hermitian) {
                const ComplexMatrix& m = density.block(blk);
                h = Complex(0.0, -0.5) * (m - m.adjoint());
            } else {
                h = density.block(blk);
            }
            const HermitianEig eig = hermitian_eig(h);
            if (prep.failure == PositivityReport::Failure::not_hermitian &&
                std::abs(eig.values.back()) > std::abs(eig.values.front()))
                col = h.rows() - 1;  // extreme eigenvector of the defect
            AlgebraElement x = AlgebraElement::zero(dom);
            for (std::size_t i = 0; i < h.rows(); ++i)
                for (std::size_t j = 0; j < h.rows(); ++j)
                    x.block(blk)(i, j) = eig.vectors(i, col) * std::conj(eig.vectors(j, col));
            if (search.try_witness(x)) return rep;
        }
    }

    // Randomized rank-one search with eigenvalue-descent refinement: alternate
    // between the worst output direction u and the input direction v that
    // minimizes u^† f(x_v) u, which never increases the objective.
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t dtot = dom.total_dim();
    for (unsigned restart = 0; restart < budget; ++restart) {
        std::vector<Complex> v(dtot);
        for (Complex& c : v) c = Complex(gauss(eng), gauss(eng));
        double norm = 0.0;
        for (const Complex& c : v) norm += std::norm(c);
        norm = std::sqrt(norm);
        for (Complex& c : v) c /= norm;

        double prev = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 25; ++iter) {
            const AlgebraElement x = blockwise_rank_one(dom, v);
            if (search.try_witness(x)) return rep;

            // Worst output direction of the symmetrized image.
            const AlgebraElement y = f.apply(x);
            std::vector<Complex> u(cod.total_dim(), Complex(0.0));
            double worst = std::numeric_limits<double>::infinity();
            std::size_t worst_block = 0;
            HermitianEig worst_eig;
            for (std::size_t b = 0; b < cod.num_blocks(); ++b) {
                const ComplexMatrix& m = y.block(b);
                const HermitianEig eig = hermitian_eig(0.5 * (m + m.adjoint()));
                if (eig.values.front() < worst) {
                    worst = eig.values.front();
                    worst_block = b;
                    worst_eig = eig;
                }
            }
            for (std::size_t i = 0; i < cod.block_dim(worst_block); ++i)
                u[cod.block_offset(worst_block) + i] = worst_eig.vectors(i, 0);
            if (worst >= prev - 1e-14) break;
            prev = worst;

            // Quadratic form of v -> u^† f(x_v) u, block-diagonal over the domain.
            ComplexMatrix m(dtot, dtot);
            for (std::size_t b = 0; b < dom.num_blocks(); ++b) {
                const std::size_t off = dom.block_offset(b);
                const std::size_t d = dom.block_dim(b);
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t c = 0; c < d; ++c) {
                        const AlgebraElement img = element_from_column(
                            cod, f.action(), dom.unit_index(b, a, c));
                        m(off + c, off + a) += embedded_quadratic_form(img, u);
                    }
            }
            const HermitianEig vm = hermitian_eig(m);
            for (std::size_t i = 0; i < dtot; ++i) v[i] = vm.vectors(i, 0);
        }
    }

    rep.verdict = MapPositivityReport::Verdict::inconclusive;
    rep.certificate = "no violating positive input found (budget " + std::to_string(budget) +
                      " restarts); positivity not certified";
    return rep;
}

LemmaReport lemma_compression_check(const SuperOperator& f_n, const SuperOperator& f_1,
                                    double tol) {
    const FdCStarAlgebra& b_alg = f_1.domain();
    const FdCStarAlgebra& a_alg = f_1.codomain();
    if (f_n.domain().num_blocks() != b_alg.num_blocks() ||
        f_n.codomain().num_blocks() != a_alg.num_blocks())
        throw ShapeMismatch("lemma check: block structures do not match");
    const std::size_t n = f_n.domain().block_dim(0) / b_alg.block_dim(0);
    if (n == 0) throw ShapeMismatch("lemma check: inconsistent amplification order");
    const MatrixExtension ext_b(b_alg, n);
    const MatrixExtension ext_a(a_alg, n);
    if (f_n.domain() != ext_b.extended() || f_n.codomain() != ext_a.extended())
        throw ShapeMismatch("lemma check: f_n is not a map M_n(B) -> M_n(A)");

    // Polarization set: e_i, e_i + e_j, e_i + i e_j. A sesquilinear form in v
    // that vanishes on this set vanishes identically.
    std::vector<std::vector<Complex>> vs;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Complex> e(n, Complex(0.0));
        e[i] = 1.0;
        vs.push_back(e);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<Complex> e(n, Complex(0.0)), g(n, Complex(0.0));
            e[i] = 1.0;
            e[j] = 1.0;
            g[i] = 1.0;
            g[j] = Complex(0.0, 1.0);
            vs.push_back(e);
            vs.push_back(g);
        }

    LemmaReport rep;
    rep.n = n;
    const FdCStarAlgebra& ext_b_alg = ext_b.extended();
    for (std::size_t idx = 0; idx < ext_b_alg.vec_dim(); ++idx) {
        // The extended unit at idx is the grid that places a base unit of B
        // in one cell: recover the cell (u, w) and the base unit beta.
        const FdCStarAlgebra::UnitPos p = ext_b_alg.unit_pos(idx);
        const std::size_t db = b_alg.block_dim(p.block);
        const std::size_t u = p.row / db, i = p.row % db;
        const std::size_t w = p.col / db, j = p.col % db;
        const std::size_t beta = b_alg.unit_index(p.block, i, j);

        const AlgebraElement fn_y = element_from_column(ext_a.extended(), f_n.action(), idx);
        const auto grid = ext_a.extract(fn_y);
        const AlgebraElement f1_unit = element_from_column(a_alg, f_1.action(), beta);

        for (const auto& v : vs) {
            AlgebraElement lhs = AlgebraElement::zero(a_alg);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s) {
                    const Complex coeff = std::conj(v[r]) * v[s];
                    if (coeff == Complex(0.0)) continue;
                    lhs += coeff * grid[r][s];
                }
            const Complex rhs_coeff = std::conj(v[u]) * v[w];
            const AlgebraElement rhs = rhs_coeff * f1_unit;
            rep.max_residual = std::max(rep.max_residual, max_abs_diff(lhs, rhs));
        }
    }
    rep.condition_holds = rep.max_residual <= tol;
    rep.superop_distance = sup_distance(f_n, amplify(f_1, n));
    rep.amplification_holds = rep.superop_distance <= tol;
    return rep;
}

}  // namespace opalg
