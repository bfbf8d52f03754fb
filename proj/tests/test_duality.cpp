#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "opalg/duality.hpp"
#include "opalg/errors.hpp"
#include "opalg/random.hpp"

using namespace opalg;

namespace {

// Independent trace pairing: explicit loops over block entries.
Complex naive_pairing(const AlgebraElement& rho, const AlgebraElement& a) {
    Complex t = 0.0;
    for (std::size_t b = 0; b < rho.num_blocks(); ++b) {
        const std::size_t d = rho.block(b).rows();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) t += rho.block(b)(i, j) * a.block(b)(j, i);
    }
    return t;
}

}  // namespace

TEST_CASE("trace pairing: normalized trace and the qubit readout") {
    const FdCStarAlgebra m2 = make_algebra({2});
    const Functional tr_norm(Complex(0.5) * AlgebraElement::identity(m2));
    CHECK(std::abs(eval(tr_norm, AlgebraElement::identity(m2)) - Complex(1.0)) < 1e-15);

    AlgebraElement e11 = AlgebraElement::zero(m2);
    e11.block(0)(0, 0) = 1.0;
    const Functional readout(e11);
    rng::Engine eng(3);
    const AlgebraElement x = rng::gaussian_element(eng, m2);
    CHECK(std::abs(eval(readout, x) - x.block(0)(0, 0)) == 0.0);
}

TEST_CASE("eval agrees with the independent trace computation") {
    rng::Engine eng(5);
    for (const auto& dims : {std::vector<std::size_t>{2}, {2, 3}, {1, 1, 2}}) {
        const FdCStarAlgebra a = make_algebra(dims);
        for (int rep = 0; rep < 30; ++rep) {
            const AlgebraElement rho = rng::gaussian_element(eng, a);
            const AlgebraElement x = rng::gaussian_element(eng, a);
            const Functional phi = functional_from_density(rho);
            CHECK(std::abs(eval(phi, x) - naive_pairing(rho, x)) <
                  1e-12 * (1.0 + std::abs(naive_pairing(rho, x))));
        }
    }
}

TEST_CASE("functional positivity tracks density positivity on y*y probes") {
    rng::Engine eng(7);
    const FdCStarAlgebra a = make_algebra({2, 2});
    const Functional pos = functional_from_density(rng::random_positive(eng, a));
    for (int rep = 0; rep < 20; ++rep) {
        const AlgebraElement y = rng::gaussian_element(eng, a);
        const Complex v = eval(pos, y.adjoint() * y);
        CHECK(v.real() > -1e-10 * (1.0 + std::abs(v)));
        CHECK(std::abs(v.imag()) < 1e-10 * (1.0 + std::abs(v)));
    }
}

TEST_CASE("precompose: identity, positivity, conjugation density oracle") {
    rng::Engine eng(11);
    const FdCStarAlgebra m2 = make_algebra({2});
    const FdCStarAlgebra m3 = make_algebra({3});

    const Functional phi = functional_from_density(rng::gaussian_element(eng, m3));
    const Functional same = precompose(phi, SuperOperator::identity(m3));
    CHECK(max_abs_diff(same.density(), phi.density()) == 0.0);

    // Defining property on samples: (phi o f)(a) = phi(f(a)).
    const SuperOperator f = rng::random_superoperator(eng, m2, m3);
    const Functional pf = precompose(phi, f);
    for (int rep = 0; rep < 25; ++rep) {
        const AlgebraElement a = rng::gaussian_element(eng, m2);
        CHECK(std::abs(eval(pf, a) - eval(phi, f.apply(a))) < 1e-11);
    }

    // Positive functional through a CP map stays positive.
    const Functional psi = functional_from_density(rng::random_positive(eng, m3));
    const SuperOperator cp = rng::random_kraus_cp(eng, 2, 3, 2);
    CHECK(is_positive_element(precompose(psi, cp).density()).positive);

    // Conjugation: the density transforms as V rho V^* (trace cyclicity).
    const ComplexMatrix v = rng::gaussian_matrix(eng, 2, 3);
    const Functional through = precompose(psi, conjugation_map(v));
    const ComplexMatrix want = v * psi.density().block(0) * v.adjoint();
    CHECK(max_abs_diff(through.density().block(0), want) < 1e-12 * (1.0 + want.max_abs()));
}

TEST_CASE("dual_map satisfies the pairing identity") {
    rng::Engine eng(13);
    const FdCStarAlgebra a = make_algebra({2, 1});
    const FdCStarAlgebra b = make_algebra({3});
    const SuperOperator f = rng::random_superoperator(eng, a, b);
    const SuperOperator d = dual_map(f);
    for (int rep = 0; rep < 30; ++rep) {
        const AlgebraElement rho = rng::gaussian_element(eng, b);
        const AlgebraElement x = rng::gaussian_element(eng, a);
        const Complex lhs = naive_pairing(d.apply(rho), x);
        const Complex rhs = naive_pairing(rho, f.apply(x));
        CHECK(std::abs(lhs - rhs) < 1e-11 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("hermitian parts") {
    rng::Engine eng(17);
    const FdCStarAlgebra m2 = make_algebra({2});

    const Functional h = functional_from_density(rng::random_hermitian(eng, m2));
    const auto [re_h, im_h] = hermitian_parts(h);
    CHECK(max_abs_diff(re_h.density(), h.density()) < 1e-14);
    CHECK(im_h.density().max_abs() < 1e-14);

    AlgebraElement rho = AlgebraElement::zero(m2);
    rho.block(0)(0, 1) = Complex(0.0, 1.0);  // i E_12
    const auto [re, im] = hermitian_parts(functional_from_density(rho));
    const AlgebraElement want_re =
        Complex(0.5) * (rho + rho.adjoint());
    const AlgebraElement want_im = Complex(0.0, -0.5) * (rho - rho.adjoint());
    CHECK(max_abs_diff(re.density(), want_re) == 0.0);
    CHECK(max_abs_diff(im.density(), want_im) == 0.0);

    // Recombination is exact.
    const AlgebraElement back = re.density() + Complex(0.0, 1.0) * im.density();
    CHECK(max_abs_diff(back, rho) == 0.0);
}

TEST_CASE("jordan decomposition of functionals") {
    rng::Engine eng(19);
    const FdCStarAlgebra m2 = make_algebra({2});

    const Functional pos = functional_from_density(rng::random_positive(eng, m2));
    const auto [p, m] = jordan_decompose(pos);
    CHECK(max_abs_diff(p.density(), pos.density()) < 1e-9 * (1.0 + pos.density().max_abs()));
    CHECK(m.density().max_abs() < 1e-9 * (1.0 + pos.density().max_abs()));

    AlgebraElement diag = AlgebraElement::zero(m2);
    diag.block(0)(0, 0) = 1.0;
    diag.block(0)(1, 1) = -1.0;
    const auto [dp, dm] = jordan_decompose(functional_from_density(diag));
    CHECK(std::abs(dp.density().block(0)(0, 0) - 1.0) < 1e-13);
    CHECK(std::abs(dm.density().block(0)(1, 1) - 1.0) < 1e-13);

    for (const auto& dims : {std::vector<std::size_t>{2}, {1, 2}}) {
        const FdCStarAlgebra a = make_algebra(dims);
        for (int rep = 0; rep < 200; ++rep) {
            const Functional phi = functional_from_density(rng::random_hermitian(eng, a));
            const auto [fp, fm] = jordan_decompose(phi);
            CHECK(is_positive_element(fp.density()).positive);
            CHECK(is_positive_element(fm.density()).positive);
            CHECK(max_abs_diff(fp.density() - fm.density(), phi.density()) <=
                  1e-10 * (1.0 + phi.density().max_abs()));
        }
    }

    AlgebraElement nh = AlgebraElement::zero(m2);
    nh.block(0)(0, 1) = 1.0;
    CHECK_THROWS_AS(jordan_decompose(functional_from_density(nh)), NotHermitian);
}

TEST_CASE("extend_cone_map recovers linear positive maps and flags frauds") {
    rng::Engine eng(23);
    const FdCStarAlgebra b = make_algebra({2});
    const FdCStarAlgebra a = make_algebra({1, 1});

    // Restriction of the cone map induced by a CP map.
    const SuperOperator f0 = rng::random_cp(eng, a, b, 2);
    const ConeMap induced{b, a, [f0](const Functional& phi) { return precompose(phi, f0); }};
    const LinearExtension ext = extend_cone_map(induced);
    for (int rep = 0; rep < 20; ++rep) {
        const Functional phi = functional_from_density(rng::gaussian_element(eng, b));
        const Functional through = ext(phi);
        const Functional want = precompose(phi, f0);
        CHECK(max_abs_diff(through.density(), want.density()) <
              1e-8 * (1.0 + want.density().max_abs()));
    }

    // Identity cone map extends to the identity.
    const ConeMap idmap{b, b, [](const Functional& phi) { return phi; }};
    CHECK(sup_distance(extend_cone_map(idmap).density_action(),
                       SuperOperator::identity(b)) < 1e-10);

    // Rank-one cone map phi -> phi(1) tau.
    const AlgebraElement tau = rng::random_positive(eng, a);
    const FdCStarAlgebra bcopy = b;
    const ConeMap rank_one{b, a, [tau, bcopy](const Functional& phi) {
                               const Complex w =
                                   eval(phi, AlgebraElement::identity(bcopy));
                               return Functional(w * tau);
                           }};
    const LinearExtension rext = extend_cone_map(rank_one);
    for (int rep = 0; rep < 10; ++rep) {
        const Functional phi = functional_from_density(rng::gaussian_element(eng, b));
        const AlgebraElement want = eval(phi, AlgebraElement::identity(b)) * tau;
        CHECK(max_abs_diff(rext(phi).density(), want) < 1e-9 * (1.0 + want.max_abs()));
    }

    // Non-additive black box.
    const ConeMap non_additive{b, a, [tau](const Functional& phi) {
                                   return Functional(
                                       Complex(phi.density().frobenius_norm()) * tau);
                               }};
    CHECK_THROWS_AS(extend_cone_map(non_additive), NotConeHomomorphism);
    try {
        extend_cone_map(non_additive);
    } catch (const NotConeHomomorphism& e) {
        CHECK(e.law == "additivity");
    }

    // Non-homogeneous black box (affine shift).
    const ConeMap affine{b, a, [tau](const Functional& phi) {
                             return Functional(
                                 Complex(1.0 + phi.density().trace().real()) * tau);
                         }};
    CHECK_THROWS_AS(extend_cone_map(affine), NotConeHomomorphism);
}

TEST_CASE("reconstruct_positive_map round trips CP-built maps") {
    rng::Engine eng(29);
    const std::vector<std::vector<std::size_t>> shapes = {{2}, {1, 1}, {2, 1}};
    for (int rep = 0; rep < 12; ++rep) {
        const FdCStarAlgebra a = make_algebra(shapes[rep % shapes.size()]);
        const FdCStarAlgebra b = make_algebra(shapes[(rep + 1) % shapes.size()]);
        const SuperOperator f0 = rng::random_cp(eng, a, b, 2);
        const ConeMap g{b, a, [f0](const Functional& phi) { return precompose(phi, f0); }};
        ConeMapCheckOptions opts;
        opts.seed = rep;
        const SuperOperator f = reconstruct_positive_map(g, opts);
        CHECK(sup_distance(f, f0) < 1e-9);
    }

    // Identity cone map reconstructs the identity.
    const FdCStarAlgebra b = make_algebra({2, 1});
    const ConeMap idmap{b, b, [](const Functional& phi) { return phi; }};
    CHECK(sup_distance(reconstruct_positive_map(idmap), SuperOperator::identity(b)) < 1e-10);
}

TEST_CASE("matrix-unit functionals separate distinct maps") {
    rng::Engine eng(31);
    const FdCStarAlgebra a = make_algebra({2});
    const FdCStarAlgebra b = make_algebra({2, 1});
    for (int rep = 0; rep < 20; ++rep) {
        const SuperOperator f = rng::random_cp(eng, a, b, 2);
        const SuperOperator g = rng::random_cp(eng, a, b, 2);
        if (sup_distance(f, g) < 1e-3) continue;
        bool separated = false;
        std::size_t probes = 0;
        for (std::size_t beta = 0; beta < b.vec_dim() && !separated; ++beta) {
            ++probes;
            const Functional phi(AlgebraElement::unit(b, beta));
            separated = max_abs_diff(precompose(phi, f).density(),
                                     precompose(phi, g).density()) > 1e-9;
        }
        CHECK(separated);
        CHECK(probes <= b.vec_dim());
    }
}
