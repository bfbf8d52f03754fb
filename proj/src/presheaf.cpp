#include "opalg/presheaf.hpp"

#include <cmath>

#include "opalg/eig.hpp"
#include "opalg/errors.hpp"

namespace opalg {

NMatMorphism nmat_identity(std::size_t n) {
    return {n, n, ComplexMatrix::identity(n)};
}

NMatMorphism nmat_compose(const NMatMorphism& v, const NMatMorphism& w) {
    if (v.target != w.source)
        throw ShapeMismatch("nmat_compose: target of the first differs from source of the second");
    return {v.source, w.target, v.matrix * w.matrix};
}

NMatMorphism nmat_dual(const NMatMorphism& v) {
    return {v.target, v.source, v.matrix.transpose()};
}

NCpMorphism::NCpMorphism(SuperOperator map, double tol) : map_(std::move(map)) {
    if (map_.domain().num_blocks() != 1 || map_.codomain().num_blocks() != 1)
        throw ShapeMismatch("NCpMorphism endpoints must be single matrix algebras");
    const CpReport rep = is_completely_positive(map_, tol);
    if (!rep.completely_positive)
        throw NotCompletelyPositive("NCpMorphism: map is not completely positive",
                                    rep.min_choi_eigenvalue);
}

NCpMorphism functor_F(const NMatMorphism& v) {
    return NCpMorphism(conjugation_map(v.matrix.transpose()));
}

namespace detail {

AlgebraElement state_density_of(const SuperOperator& f) {
    const FdCStarAlgebra& a = f.domain();
    const std::size_t n = f.codomain().block_dim(0);
    const MatrixExtension ext(a, n);
    AlgebraElement rho = AlgebraElement::zero(ext.extended());
    // tr(rho E_(b,r,c)) must equal f(E_beta)[u, v] for the base unit beta that
    // the extended unit (b, r, c) places in grid cell (u, v).
    for (std::size_t idx = 0; idx < ext.extended().vec_dim(); ++idx) {
        const FdCStarAlgebra::UnitPos p = ext.extended().unit_pos(idx);
        const std::size_t db = a.block_dim(p.block);
        const std::size_t u = p.row / db, i = p.row % db;
        const std::size_t v = p.col / db, j = p.col % db;
        const std::size_t beta = a.unit_index(p.block, i, j);
        rho.block(p.block)(p.col, p.row) = f.action()(u * n + v, beta);
    }
    return rho;
}

SuperOperator cpmap_of_density(const AlgebraElement& rho, const FdCStarAlgebra& a,
                               std::size_t n) {
    const MatrixExtension ext(a, n);
    if (rho.algebra() != ext.extended())
        throw AlgebraMismatch("density does not live on M_n(A)");
    const FdCStarAlgebra cod({n});
    ComplexMatrix action(cod.vec_dim(), a.vec_dim());
    for (std::size_t beta = 0; beta < a.vec_dim(); ++beta) {
        const FdCStarAlgebra::UnitPos p = a.unit_pos(beta);
        const std::size_t db = a.block_dim(p.block);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                action(i * n + j, beta) = rho.block(p.block)(j * db + p.col, i * db + p.row);
    }
    return {a, cod, std::move(action)};
}

}  // namespace detail

Functional cpmap_to_state(const SuperOperator& f, double tol) {
    if (f.codomain().num_blocks() != 1)
        throw ShapeMismatch("cpmap_to_state: codomain must be a single matrix algebra");
    const CpReport rep = is_completely_positive(f, tol);
    if (!rep.completely_positive)
        throw NotCompletelyPositive("cpmap_to_state: map is not completely positive",
                                    rep.min_choi_eigenvalue);
    return Functional(detail::state_density_of(f));
}

SuperOperator state_to_cpmap(const Functional& s, const FdCStarAlgebra& a, std::size_t n,
                             double tol) {
    const PositivityReport rep = is_positive_element(s.density(), tol);
    if (!rep.positive)
        throw NotPositiveFunctional("state_to_cpmap: the functional's density is not positive");
    return detail::cpmap_of_density(s.density(), a, n);
}

ChoiElement choi_element_of(const SuperOperator& f, double tol) {
    const Functional s = cpmap_to_state(f, tol);
    return {f.codomain().block_dim(0), f.domain(), s.density()};
}

SuperOperator map_from_choi_element(const ChoiElement& ce, double tol) {
    return state_to_cpmap(Functional(ce.element), ce.algebra, ce.n, tol);
}

namespace {

ComplexMatrix upper_embed(std::size_t n) {  // n x 2n, [I 0]
    ComplexMatrix m(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix lower_embed(std::size_t n) {  // n x 2n, [0 I]
    ComplexMatrix m(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) m(i, n + i) = 1.0;
    return m;
}

}  // namespace

NCpMorphism j_map(std::size_t n) {
    const ComplexMatrix pi1 = upper_embed(n).adjoint() * upper_embed(n);  // diag(I, 0)
    const ComplexMatrix pi2 = lower_embed(n).adjoint() * lower_embed(n);  // diag(0, I)
    return NCpMorphism(conjugation_map(pi1) + conjugation_map(pi2));
}

NCpMorphism t_map(std::size_t n) {
    const ComplexMatrix w1 = upper_embed(n).adjoint();  // 2n x n, [I; 0]
    const ComplexMatrix w2 = lower_embed(n).adjoint();  // 2n x n, [0; I]
    return NCpMorphism(conjugation_map(w1) + conjugation_map(w2));
}

NCpMorphism p_map(std::size_t n) { return NCpMorphism(conjugation_map(upper_embed(n))); }

NCpMorphism q_map(std::size_t n) { return NCpMorphism(conjugation_map(lower_embed(n))); }

NCpMorphism r_map(std::size_t n) {
    return NCpMorphism(conjugation_map(upper_embed(n)) + conjugation_map(lower_embed(n)));
}

SuperOperator pair_encode(const SuperOperator& f, const SuperOperator& g, double tol) {
    if (f.domain() != g.domain())
        throw AlgebraMismatch("pair_encode: the maps must share a domain");
    if (f.codomain() != g.codomain() || f.codomain().num_blocks() != 1)
        throw ShapeMismatch("pair_encode: the maps must share a single-block codomain");
    for (const SuperOperator* part : {&f, &g}) {
        const CpReport rep = is_completely_positive(*part, tol);
        if (!rep.completely_positive)
            throw NotCompletelyPositive("pair_encode: input map is not completely positive",
                                        rep.min_choi_eigenvalue);
    }
    const std::size_t n = f.codomain().block_dim(0);
    return compose(p_map(n).map(), f) + compose(q_map(n).map(), g);
}

std::pair<SuperOperator, SuperOperator> pair_decode(const SuperOperator& h, double tol) {
    if (h.codomain().num_blocks() != 1 || h.codomain().block_dim(0) % 2 != 0)
        throw ShapeMismatch("pair_decode: codomain must be M_2n");
    const std::size_t n = h.codomain().block_dim(0) / 2;
    const SuperOperator jh = compose(j_map(n).map(), h);
    const double defect = sup_distance(jh, h);
    if (defect > tol * (1.0 + h.action().max_abs()))
        throw NotJFixed("pair_decode: j o h != h, defect " + std::to_string(defect));
    const SuperOperator f = compose(conjugation_map(upper_embed(n).adjoint()), h);
    const SuperOperator g = compose(conjugation_map(lower_embed(n).adjoint()), h);
    return {f, g};
}

KaroubiData karoubi_idempotent(const FdCStarAlgebra& a) {
    SuperOperator embed = block_embedding(a);
    SuperOperator compress = block_compression(a);
    NCpMorphism e(compose(embed, compress));
    return {a.total_dim(), std::move(e), std::move(embed), std::move(compress)};
}

NaturalFamily natural_family_from_map(const SuperOperator& f, std::size_t truncation,
                                      double tol) {
    const CpReport rep = is_completely_positive(f, tol);
    if (!rep.completely_positive)
        throw NotCompletelyPositive("natural_family_from_map: map is not completely positive",
                                    rep.min_choi_eigenvalue);
    if (truncation == 0) throw ShapeMismatch("natural_family_from_map: truncation must be >= 1");
    return {f.domain(), f.codomain(), truncation,
            [f](std::size_t, const SuperOperator& g) { return compose(g, f); }};
}

SuperOperator random_cp_into_matrix(rng::Engine& eng, const FdCStarAlgebra& b, std::size_t m) {
    const MatrixExtension ext(b, m);
    AlgebraElement y = rng::gaussian_element(eng, ext.extended());
    y *= Complex(1.0 / std::sqrt(static_cast<double>(ext.extended().total_dim())));
    const AlgebraElement rho = y.adjoint() * y;
    return detail::cpmap_of_density(rho, b, m);
}

namespace {

struct ProbePick {
    std::string kind;
    std::size_t n;  // target of h: m -> n
    SuperOperator h;
};

ProbePick pick_probe(rng::Engine& eng, std::size_t m, std::size_t trunc) {
    std::vector<std::string> kinds = {"conjugation", "kraus"};
    kinds.emplace_back("scalar");
    if (m % 2 == 0) {
        kinds.emplace_back("j");
        kinds.emplace_back("t");
    }
    if (2 * m <= trunc) {
        kinds.emplace_back("p");
        kinds.emplace_back("q");
        kinds.emplace_back("r");
    }
    std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
    const std::string kind = kinds[pick(eng)];
    std::uniform_int_distribution<std::size_t> dim(1, trunc);
    if (kind == "conjugation") {
        const std::size_t n = dim(eng);
        ComplexMatrix v = rng::gaussian_matrix(eng, m, n);
        v *= Complex(1.0 / std::sqrt(static_cast<double>(m)));
        return {kind, n, conjugation_map(v)};
    }
    if (kind == "kraus") {
        const std::size_t n = dim(eng);
        return {kind, n, rng::random_kraus_cp(eng, m, n, 2)};
    }
    if (kind == "scalar") {
        std::uniform_real_distribution<double> lam(0.0, 3.0);
        return {kind, m, scalar_map(m, lam(eng))};
    }
    if (kind == "j") return {kind, m, j_map(m / 2).map()};
    if (kind == "t") return {kind, m / 2, t_map(m / 2).map()};
    if (kind == "p") return {kind, 2 * m, p_map(m).map()};
    if (kind == "q") return {kind, 2 * m, q_map(m).map()};
    return {kind, 2 * m, r_map(m).map()};
}

}  // namespace

NaturalityReport check_naturality(const NaturalFamily& fam, std::size_t probes,
                                  std::uint64_t seed, double tol) {
    NaturalityReport rep;
    rng::Engine eng(seed);
    const std::size_t trunc = fam.truncation;
    std::uniform_int_distribution<std::size_t> dim(1, trunc);

    for (std::size_t s = 0; s < probes; ++s) {
        const std::size_t m = dim(eng);
        const SuperOperator g = random_cp_into_matrix(eng, fam.target, m);
        const ProbePick probe = pick_probe(eng, m, trunc);
        const SuperOperator lhs = fam.component(probe.n, compose(probe.h, g));
        const SuperOperator rhs = compose(probe.h, fam.component(m, g));
        const double residual = sup_distance(lhs, rhs);
        rep.general_max_residual = std::max(rep.general_max_residual, residual);
        ++rep.probes_run;
        if (residual > tol * (1.0 + rhs.action().max_abs())) {
            rep.pass = false;
            rep.violation = {probe.kind, m, probe.n, residual, probe.h, g};
            return rep;
        }
    }

    // Consequence probes: the cone structure a natural family must preserve.
    const double lambdas[] = {0.0, 0.5, 2.0, 7.25};
    for (double lambda : lambdas) {
        const std::size_t m = dim(eng);
        const SuperOperator g = random_cp_into_matrix(eng, fam.target, m);
        const SuperOperator lhs = fam.component(m, Complex(lambda) * g);
        const SuperOperator rhs = Complex(lambda) * fam.component(m, g);
        const double residual = sup_distance(lhs, rhs);
        rep.consequence_max_residual = std::max(rep.consequence_max_residual, residual);
        ++rep.probes_run;
        if (residual > tol * (1.0 + rhs.action().max_abs())) {
            rep.pass = false;
            rep.violation = {"scalar-consequence", m, m, residual, scalar_map(m, lambda), g};
            return rep;
        }
    }
    if (trunc >= 2) {
        for (std::size_t s = 0; s < 4; ++s) {
            std::uniform_int_distribution<std::size_t> half(1, trunc / 2);
            const std::size_t m = half(eng);
            const SuperOperator g1 = random_cp_into_matrix(eng, fam.target, m);
            const SuperOperator g2 = random_cp_into_matrix(eng, fam.target, m);
            const SuperOperator paired = pair_encode(g1, g2);
            const SuperOperator t = t_map(m).map();
            // Naturality at t on the paired map, plus the resulting additivity.
            const SuperOperator lhs_nat = fam.component(m, compose(t, paired));
            const SuperOperator rhs_nat = compose(t, fam.component(2 * m, paired));
            const SuperOperator lhs_add = fam.component(m, g1 + g2);
            const SuperOperator rhs_add = fam.component(m, g1) + fam.component(m, g2);
            const double residual =
                std::max(sup_distance(lhs_nat, rhs_nat), sup_distance(lhs_add, rhs_add));
            rep.consequence_max_residual = std::max(rep.consequence_max_residual, residual);
            ++rep.probes_run;
            if (residual > tol * (1.0 + rhs_add.action().max_abs())) {
                rep.pass = false;
                rep.violation = {"additivity-consequence", m, m, residual, t, g1};
                return rep;
            }
        }
    }

    rep.pass = true;
    return rep;
}

SuperOperator reconstruct_map_from_family(const NaturalFamily& fam, std::size_t probes,
                                          std::uint64_t seed, double tol) {
    const FdCStarAlgebra& b = fam.target;
    if (fam.truncation < b.total_dim())
        throw TruncationTooSmall("reconstruction needs truncation >= total_dim(B) = " +
                                 std::to_string(b.total_dim()) + ", got " +
                                 std::to_string(fam.truncation));
    const NaturalityReport nat = check_naturality(fam, probes, seed, tol);
    if (!nat.pass) {
        const NaturalityViolation& v = *nat.violation;
        throw NotNatural("naturality violated by a " + v.probe_kind + " probe " +
                             std::to_string(v.m) + " -> " + std::to_string(v.n) +
                             ", residual " + std::to_string(v.residual),
                         v.residual);
    }

    const KaroubiData k = karoubi_idempotent(b);
    const SuperOperator f = compose(k.compress, fam.component(k.d, k.embed));
    if (f.domain() != fam.source)
        throw AlgebraMismatch("family components act on the wrong source algebra");

    rng::Engine eng(seed ^ 0x6a09e667f3bcc908ULL);
    std::uniform_int_distribution<std::size_t> dim(1, fam.truncation);
    for (std::size_t s = 0; s < probes; ++s) {
        const std::size_t m = dim(eng);
        const SuperOperator g = random_cp_into_matrix(eng, b, m);
        const SuperOperator expected = compose(g, f);
        const double residual = sup_distance(fam.component(m, g), expected);
        if (residual > tol * (1.0 + expected.action().max_abs()))
            throw ReconstructionMismatch(
                "family is not precomposition by the reconstructed map, residual " +
                    std::to_string(residual),
                residual);
    }
    const CpReport cp = is_completely_positive(f, tol);
    if (!cp.completely_positive)
        throw ReconstructionMismatch("reconstructed map is not completely positive",
                                     cp.min_choi_eigenvalue);
    return f;
}

NaturalFamily builtin_family(const std::string& name, const FdCStarAlgebra& a,
                             const FdCStarAlgebra& b, std::size_t truncation,
                             std::uint64_t seed) {
    rng::Engine eng(seed);
    const SuperOperator base = rng::random_cp(eng, a, b, 2);
    if (name == "twist-transpose") {
        return {a, b, truncation, [base](std::size_t n, const SuperOperator& g) {
                    const SuperOperator composed = compose(g, base);
                    if (n == 2) return compose(transpose_map(2), composed);
                    return composed;
                }};
    }
    if (name == "drop-additivity") {
        const FdCStarAlgebra bcopy = b;
        return {a, b, truncation, [base, bcopy](std::size_t, const SuperOperator& g) {
                    const SuperOperator lifted = compose(g, block_compression(bcopy));
                    const double weight = 1.0 + choi_of(lifted).trace().real();
                    return Complex(weight) * compose(g, base);
                }};
    }
    throw ParseError("unknown builtin family '" + name + "'");
}

std::vector<std::string> builtin_family_names() {
    return {"twist-transpose", "drop-additivity"};
}

}  // namespace opalg
