#include "opalg/duality.hpp"

#include <cmath>

#include "opalg/errors.hpp"
#include "opalg/random.hpp"

namespace opalg {

Complex eval(const Functional& phi, const AlgebraElement& a) {
    if (phi.algebra() != a.algebra())
        throw AlgebraMismatch("eval: element does not live in the functional's algebra");
    return (phi.density() * a).trace();
}

Functional functional_from_density(const AlgebraElement& rho) { return Functional(rho); }

const AlgebraElement& density_from_functional(const Functional& phi) { return phi.density(); }

SuperOperator dual_map(const SuperOperator& f) {
    const FdCStarAlgebra& a = f.domain();
    const FdCStarAlgebra& b = f.codomain();
    // D[alpha, beta] = F[t_B(beta), t_A(alpha)], from matching coefficients in
    // trace(D(E_beta) E_gamma) = trace(E_beta f(E_gamma)) with
    // trace(E_alpha E_gamma) nonzero exactly on transpose partners.
    ComplexMatrix d(a.vec_dim(), b.vec_dim());
    for (std::size_t alpha = 0; alpha < a.vec_dim(); ++alpha)
        for (std::size_t beta = 0; beta < b.vec_dim(); ++beta)
            d(alpha, beta) = f.action()(b.transpose_index(beta), a.transpose_index(alpha));
    return {b, a, std::move(d)};
}

Functional precompose(const Functional& phi, const SuperOperator& f) {
    if (phi.algebra() != f.codomain())
        throw AlgebraMismatch("precompose: functional does not live on the codomain");
    return Functional(dual_map(f).apply(phi.density()));
}

std::pair<Functional, Functional> hermitian_parts(const Functional& phi) {
    const AlgebraElement& rho = phi.density();
    const AlgebraElement star = rho.adjoint();
    AlgebraElement re = Complex(0.5) * (rho + star);
    AlgebraElement im = Complex(0.0, -0.5) * (rho - star);
    return {Functional(std::move(re)), Functional(std::move(im))};
}

std::pair<Functional, Functional> jordan_decompose(const Functional& phi, double tol) {
    auto [plus, minus] = positive_decomposition(phi.density(), tol);
    return {Functional(std::move(plus)), Functional(std::move(minus))};
}

namespace {

double functional_distance(const Functional& x, const Functional& y) {
    return max_abs_diff(x.density(), y.density());
}

Functional scale(Complex a, const Functional& phi) { return Functional(a * phi.density()); }

Functional add(const Functional& x, const Functional& y) {
    return Functional(x.density() + y.density());
}

Functional sample_positive(rng::Engine& eng, const FdCStarAlgebra& a,
                           const ConeMapCheckOptions& opts) {
    AlgebraElement rho = rng::random_positive(eng, a);
    if (opts.normalize_probes) {
        const double tr = rho.trace().real();
        if (tr > 1e-12) rho *= Complex(1.0 / tr);
    }
    return Functional(std::move(rho));
}

void check_cone_laws(const ConeMap& g, const ConeMapCheckOptions& opts) {
    rng::Engine eng(opts.seed);
    const FdCStarAlgebra& src = g.source;

    const Functional zero = functional_from_density(AlgebraElement::zero(src));
    const Functional gzero = g.eval(zero);
    if (gzero.algebra() != g.target)
        throw AlgebraMismatch("cone map produced a functional on the wrong algebra");
    if (density_from_functional(gzero).max_abs() > opts.tol)
        throw NotConeHomomorphism(
            "zero", "cone map does not send the zero functional to zero");

    for (std::size_t s = 0; s < opts.law_samples; ++s) {
        const Functional phi = sample_positive(eng, src, opts);
        const Functional psi = sample_positive(eng, src, opts);
        const Functional gphi = g.eval(phi);
        const Functional gpsi = g.eval(psi);
        const double scale_ref = 1.0 + density_from_functional(gphi).max_abs() +
                                 density_from_functional(gpsi).max_abs();

        if (!is_positive_element(density_from_functional(gphi), 1e-7).positive)
            throw NotConeHomomorphism("positivity",
                                      "cone map sent a positive functional to a non-positive one");

        const double add_residual =
            functional_distance(g.eval(add(phi, psi)), add(gphi, gpsi));
        if (add_residual > opts.tol * scale_ref)
            throw NotConeHomomorphism("additivity",
                                      "g(phi + psi) != g(phi) + g(psi), residual " +
                                          std::to_string(add_residual));

        std::uniform_real_distribution<double> unif(0.0, 4.0);
        const double lambda = unif(eng);
        const double hom_residual =
            functional_distance(g.eval(scale(lambda, phi)), scale(lambda, gphi));
        if (hom_residual > opts.tol * scale_ref)
            throw NotConeHomomorphism("homogeneity",
                                      "g(lambda phi) != lambda g(phi), residual " +
                                          std::to_string(hom_residual));
    }
}

}  // namespace

LinearExtension::LinearExtension(ConeMap g, const ConeMapCheckOptions& opts)
    : g_(std::move(g)), action_(SuperOperator::zero(g_.source, g_.target)) {
    check_cone_laws(g_, opts);
    rng::Engine eng(opts.seed + 0x9e3779b97f4a7c15ULL);
    const FdCStarAlgebra& src = g_.source;

    const auto extend_hermitian = [&](const Functional& phi) {
        auto [plus, minus] = jordan_decompose(phi, 1e-7);
        return Functional(density_from_functional(g_.eval(plus)) -
                          density_from_functional(g_.eval(minus)));
    };

    // Well-definedness: the value must not depend on the chosen decomposition
    // into positive parts (perturb both parts by a common positive sigma).
    for (std::size_t s = 0; s < 6; ++s) {
        const Functional phi = functional_from_density(rng::random_hermitian(eng, src));
        const Functional base = extend_hermitian(phi);
        auto [plus, minus] = jordan_decompose(phi, 1e-7);
        for (std::size_t p = 0; p < opts.decomposition_perturbations; ++p) {
            const AlgebraElement sigma = rng::random_positive(eng, src);
            const Functional alt_plus(density_from_functional(plus) + sigma);
            const Functional alt_minus(density_from_functional(minus) + sigma);
            const Functional alt(density_from_functional(g_.eval(alt_plus)) -
                                 density_from_functional(g_.eval(alt_minus)));
            const double residual = functional_distance(base, alt);
            const double scale_ref = 1.0 + density_from_functional(base).max_abs();
            if (residual > opts.tol * scale_ref)
                throw NotConeHomomorphism(
                    "well-definedness",
                    "extension depends on the positive decomposition, residual " +
                        std::to_string(residual));
        }
    }

    // Linearity on sampled real combinations of Hermitian functionals.
    for (std::size_t s = 0; s < 6; ++s) {
        const Functional phi = functional_from_density(rng::random_hermitian(eng, src));
        const Functional psi = functional_from_density(rng::random_hermitian(eng, src));
        std::uniform_real_distribution<double> unif(-3.0, 3.0);
        const double alpha = unif(eng), beta = unif(eng);
        const Functional combo(Complex(alpha) * density_from_functional(phi) +
                               Complex(beta) * density_from_functional(psi));
        const Functional lhs = extend_hermitian(combo);
        const Functional rhs(Complex(alpha) * density_from_functional(extend_hermitian(phi)) +
                             Complex(beta) * density_from_functional(extend_hermitian(psi)));
        const double residual = functional_distance(lhs, rhs);
        const double scale_ref = 1.0 + density_from_functional(rhs).max_abs();
        if (residual > opts.tol * scale_ref)
            throw NotConeHomomorphism("linearity",
                                      "extension is not linear on Hermitian functionals, residual " +
                                          std::to_string(residual));
    }

    // Assemble the matrix of the extension on densities by splitting each
    // matrix unit into Hermitian parts and each part into positive parts.
    ComplexMatrix m(g_.target.vec_dim(), src.vec_dim());
    for (std::size_t beta = 0; beta < src.vec_dim(); ++beta) {
        const Functional unit(AlgebraElement::unit(src, beta));
        auto [re, im] = hermitian_parts(unit);
        const AlgebraElement out = density_from_functional(extend_hermitian(re)) +
                                   Complex(0.0, 1.0) *
                                       density_from_functional(extend_hermitian(im));
        const std::vector<Complex> col = out.vectorize();
        for (std::size_t r = 0; r < col.size(); ++r) m(r, beta) = col[r];
    }
    action_ = SuperOperator(src, g_.target, std::move(m));
}

Functional LinearExtension::operator()(const Functional& phi) const {
    if (phi.algebra() != g_.source)
        throw AlgebraMismatch("extension applied to a functional on the wrong algebra");
    return Functional(action_.apply(phi.density()));
}

LinearExtension extend_cone_map(const ConeMap& g, const ConeMapCheckOptions& opts) {
    return {g, opts};
}

SuperOperator reconstruct_positive_map(const ConeMap& g, const ConeMapCheckOptions& opts) {
    const LinearExtension ext(g, opts);
    // The extension acts on densities of functionals on B (= g.source); the
    // reconstructed map runs A -> B where A = g.target.
    const FdCStarAlgebra& b = g.source;
    const FdCStarAlgebra& a = g.target;
    const SuperOperator& d = ext.density_action();
    // Invert the trace-pairing adjoint: F[delta, gamma] = D[t_A(gamma), t_B(delta)].
    ComplexMatrix fm(b.vec_dim(), a.vec_dim());
    for (std::size_t delta = 0; delta < b.vec_dim(); ++delta)
        for (std::size_t gamma = 0; gamma < a.vec_dim(); ++gamma)
            fm(delta, gamma) = d.action()(a.transpose_index(gamma), b.transpose_index(delta));
    SuperOperator f(a, b, std::move(fm));

    rng::Engine eng(opts.seed + 0x2545f4914f6cdd1dULL);
    for (std::size_t s = 0; s < opts.law_samples; ++s) {
        const Functional phi = sample_positive(eng, b, opts);
        const Functional via_g = g.eval(phi);
        const Functional via_f = precompose(phi, f);
        const double residual = functional_distance(via_g, via_f);
        const double scale_ref = 1.0 + density_from_functional(via_g).max_abs();
        if (residual > opts.tol * scale_ref)
            throw NotConeHomomorphism(
                "induced-map-mismatch",
                "reconstructed map disagrees with the cone map, residual " +
                    std::to_string(residual));
        const AlgebraElement x = rng::random_positive(eng, a);
        if (!is_positive_element(f.apply(x), 1e-7).positive)
            throw NotConeHomomorphism("induced-map-not-positive",
                                      "reconstructed map fails to preserve positivity");
    }
    return f;
}

}  // namespace opalg
