#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "opalg/errors.hpp"
#include "opalg/presheaf.hpp"
#include "opalg/random.hpp"

using namespace opalg;

TEST_CASE("nmat morphisms compose by matrix multiplication and dualize by transpose") {
    rng::Engine eng(2);
    const NMatMorphism v{2, 3, rng::gaussian_matrix(eng, 2, 3)};
    const NMatMorphism w{3, 4, rng::gaussian_matrix(eng, 3, 4)};
    const NMatMorphism vw = nmat_compose(v, w);
    CHECK(vw.source == 2);
    CHECK(vw.target == 4);
    CHECK(max_abs_diff(vw.matrix, v.matrix * w.matrix) == 0.0);
    const NMatMorphism vd = nmat_dual(v);
    CHECK(vd.source == 3);
    CHECK(vd.target == 2);
    CHECK(max_abs_diff(vd.matrix, v.matrix.transpose()) == 0.0);
    CHECK_THROWS_AS(nmat_compose(w, v), ShapeMismatch);
}

TEST_CASE("functor_F: identities, the [1;0] example, contravariance") {
    const NCpMorphism fid = functor_F(nmat_identity(3));
    CHECK(sup_distance(fid.map(), SuperOperator::identity(make_algebra({3}))) == 0.0);

    // V = [1; 0]: 2 -> 1; F(V): M_1 -> M_2 sends a to a E_11.
    ComplexMatrix v(2, 1);
    v(0, 0) = 1.0;
    const NCpMorphism fv = functor_F(NMatMorphism{2, 1, v});
    CHECK(fv.source() == 1);
    CHECK(fv.target() == 2);
    AlgebraElement a = AlgebraElement::zero(make_algebra({1}));
    a.block(0)(0, 0) = Complex(2.0, -1.0);
    const AlgebraElement img = fv.map().apply(a);
    CHECK(std::abs(img.block(0)(0, 0) - Complex(2.0, -1.0)) == 0.0);
    CHECK(std::abs(img.block(0)(1, 1)) == 0.0);

    rng::Engine eng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const NMatMorphism x{2, 3, rng::gaussian_matrix(eng, 2, 3)};
        const NMatMorphism y{3, 2, rng::gaussian_matrix(eng, 3, 2)};
        // F reverses composition: F(x y) = F(x) after F(y).
        const SuperOperator lhs = functor_F(nmat_compose(x, y)).map();
        const SuperOperator rhs = compose(functor_F(x).map(), functor_F(y).map());
        CHECK(sup_distance(lhs, rhs) <= 1e-11 * (1.0 + rhs.action().max_abs()));
    }
}

TEST_CASE("state <-> CP bijection") {
    rng::Engine eng(5);

    // n = 1: the correspondence is the identity on densities.
    const FdCStarAlgebra a = make_algebra({2, 1});
    const AlgebraElement rho = rng::random_positive(eng, a);
    const SuperOperator f1 = state_to_cpmap(Functional(rho), a, 1);
    for (int rep = 0; rep < 10; ++rep) {
        const AlgebraElement x = rng::gaussian_element(eng, a);
        CHECK(std::abs(f1.apply(x).block(0)(0, 0) - eval(Functional(rho), x)) < 1e-12);
    }

    // The maximally entangled grid gives the identity map M_m -> M_m.
    for (std::size_t m : {2, 3}) {
        const FdCStarAlgebra mm = make_algebra({m});
        const MatrixExtension ext = matrix_algebra_over(mm, m);
        AlgebraElement omega = AlgebraElement::zero(ext.extended());
        for (std::size_t u = 0; u < m; ++u)
            for (std::size_t v = 0; v < m; ++v)
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < m; ++j)
                        if (u == i && v == j) omega.block(0)(u * m + i, v * m + j) = 1.0;
        const SuperOperator idm = state_to_cpmap(Functional(omega), mm, m);
        CHECK(sup_distance(idm, SuperOperator::identity(mm)) == 0.0);
    }

    // Round trips over random CP maps.
    for (const auto& dims : {std::vector<std::size_t>{1}, {2}, {3}, {1, 1}, {2, 1}}) {
        const FdCStarAlgebra dom = make_algebra(dims);
        for (std::size_t n : {1, 2, 3}) {
            for (int rep = 0; rep < 8; ++rep) {
                const SuperOperator f = rng::random_cp(eng, dom, make_algebra({n}), 2);
                const Functional s = cpmap_to_state(f);
                CHECK(is_positive_element(s.density()).positive);
                const SuperOperator back = state_to_cpmap(s, dom, n);
                CHECK(sup_distance(back, f) <= 1e-11 * (1.0 + f.action().max_abs()));

                const AlgebraElement sig = rng::random_positive(eng, matrix_algebra_over(dom, n).extended());
                const SuperOperator g = state_to_cpmap(Functional(sig), dom, n);
                CHECK(is_completely_positive(g).completely_positive);
                const Functional s2 = cpmap_to_state(g);
                CHECK(max_abs_diff(s2.density(), sig) <= 1e-11 * (1.0 + sig.max_abs()));
            }
        }
    }

    // Non-CP maps produce non-positive densities and vice versa.
    const AlgebraElement bad_rho = detail::state_density_of(transpose_map(2));
    CHECK_FALSE(is_positive_element(bad_rho).positive);
    CHECK_THROWS_AS(cpmap_to_state(transpose_map(2)), NotCompletelyPositive);
    const FdCStarAlgebra m2 = make_algebra({2});
    AlgebraElement neg = AlgebraElement::zero(matrix_algebra_over(m2, 2).extended());
    neg.block(0)(0, 0) = -1.0;
    CHECK_FALSE(is_completely_positive(detail::cpmap_of_density(neg, m2, 2)).completely_positive);
    CHECK_THROWS_AS(state_to_cpmap(Functional(neg), m2, 2), NotPositiveFunctional);
}

TEST_CASE("choi elements carry the CP verdict") {
    rng::Engine eng(7);
    const FdCStarAlgebra a = make_algebra({2, 1});
    const SuperOperator f = rng::random_cp(eng, a, make_algebra({2}), 2);
    const ChoiElement ce = choi_element_of(f);
    CHECK(ce.n == 2);
    CHECK(is_positive_element(ce.element).positive);
    CHECK(sup_distance(map_from_choi_element(ce), f) < 1e-11);
}

TEST_CASE("the j/t/p/q/r family") {
    for (std::size_t n : {1, 2, 3}) {
        const SuperOperator j = j_map(n).map();
        const SuperOperator t = t_map(n).map();
        const SuperOperator p = p_map(n).map();
        const SuperOperator q = q_map(n).map();
        const SuperOperator r = r_map(n).map();
        const SuperOperator idn = SuperOperator::identity(make_algebra({n}));

        CHECK(sup_distance(compose(j, j), j) == 0.0);            // idempotent
        CHECK(sup_distance(compose(t, p), idn) == 0.0);          // t(p(a)) = a
        CHECK(sup_distance(compose(t, q), idn) == 0.0);          // t(q(a)) = a
        CHECK(sup_distance(compose(t, r), scalar_map(n, 2.0)) == 0.0);  // t(r(a)) = 2a
        CHECK(sup_distance(compose(j, p), p) == 0.0);
        CHECK(sup_distance(compose(j, q), q) == 0.0);

        // j zeroes the off-diagonal blocks; t sums the diagonal ones.
        rng::Engine eng(11 + n);
        const FdCStarAlgebra m2n = make_algebra({2 * n});
        const AlgebraElement x = rng::gaussian_element(eng, m2n);
        const AlgebraElement jx = j.apply(x);
        const AlgebraElement tx = t.apply(x);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                CHECK(std::abs(jx.block(0)(i, n + k)) == 0.0);
                CHECK(std::abs(jx.block(0)(n + i, k)) == 0.0);
                CHECK(std::abs(jx.block(0)(i, k) - x.block(0)(i, k)) == 0.0);
                CHECK(std::abs(tx.block(0)(i, k) -
                               (x.block(0)(i, k) + x.block(0)(n + i, n + k))) == 0.0);
            }
    }
}

TEST_CASE("pair encode/decode") {
    rng::Engine eng(13);
    const FdCStarAlgebra a = make_algebra({2, 1});
    const SuperOperator f = rng::random_cp(eng, a, make_algebra({2}), 2);
    const SuperOperator g = rng::random_cp(eng, a, make_algebra({2}), 1);

    const SuperOperator zero = SuperOperator::zero(a, make_algebra({2}));
    CHECK(pair_encode(zero, zero).action().max_abs() == 0.0);

    const SuperOperator h = pair_encode(f, g);
    CHECK(is_completely_positive(h).completely_positive);
    CHECK(sup_distance(compose(j_map(2).map(), h), h) == 0.0);
    CHECK(sup_distance(compose(t_map(2).map(), h), f + g) == 0.0);

    const auto [f2, g2] = pair_decode(h);
    CHECK(sup_distance(f2, f) == 0.0);
    CHECK(sup_distance(g2, g) == 0.0);

    // A map that is not j-fixed is rejected.
    const SuperOperator loose = rng::random_kraus_cp(eng, a.total_dim(), 4, 2);
    const SuperOperator embedded = compose(loose, block_embedding(a));
    if (sup_distance(compose(j_map(2).map(), embedded), embedded) > 1e-6)
        CHECK_THROWS_AS(pair_decode(embedded), NotJFixed);
}

TEST_CASE("j-fixed CP maps are exactly the encoded pairs") {
    rng::Engine eng(15);
    const FdCStarAlgebra a = make_algebra({2, 1});
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + rep % 2;
        // Any CP map into M_2n becomes j-fixed after composing with j, and
        // every j-fixed map decodes and re-encodes to itself.
        const SuperOperator h = random_cp_into_matrix(eng, a, 2 * n);
        const SuperOperator fixed = compose(j_map(n).map(), h);
        const auto [f, g] = pair_decode(fixed);
        CHECK(sup_distance(pair_encode(f, g), fixed) <= 1e-11);
    }
}

TEST_CASE("t o pair_encode adds CP pairs across 100 random instances") {
    rng::Engine eng(17);
    const FdCStarAlgebra a = make_algebra({2});
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + rep % 3;
        const SuperOperator f = random_cp_into_matrix(eng, a, n);
        const SuperOperator g = random_cp_into_matrix(eng, a, n);
        CHECK(sup_distance(compose(t_map(n).map(), pair_encode(f, g)), f + g) <= 1e-11);
    }
}

TEST_CASE("karoubi idempotents") {
    // A single block splits trivially.
    const KaroubiData km3 = karoubi_idempotent(make_algebra({3}));
    CHECK(km3.d == 3);
    CHECK(sup_distance(km3.idempotent.map(), SuperOperator::identity(make_algebra({3}))) == 0.0);

    // C^2 splits through j at n = 1.
    const KaroubiData kbits = karoubi_idempotent(make_algebra({1, 1}));
    CHECK(kbits.d == 2);
    CHECK(sup_distance(kbits.idempotent.map(), j_map(1).map()) == 0.0);

    // Mixed blocks: P o iota = id exactly, e idempotent.
    const FdCStarAlgebra a = make_algebra({2, 3});
    const KaroubiData k = karoubi_idempotent(a);
    CHECK(k.d == 5);
    CHECK(sup_distance(compose(k.compress, k.embed), SuperOperator::identity(a)) == 0.0);
    CHECK(sup_distance(compose(k.idempotent.map(), k.idempotent.map()), k.idempotent.map()) <=
          1e-12);

    // The embedding is multiplicative and injective on samples.
    rng::Engine eng(19);
    for (int rep = 0; rep < 10; ++rep) {
        const AlgebraElement x = rng::gaussian_element(eng, a);
        const AlgebraElement y = rng::gaussian_element(eng, a);
        CHECK(max_abs_diff(k.embed.apply(x * y), k.embed.apply(x) * k.embed.apply(y)) < 1e-11);
        CHECK(max_abs_diff(k.embed.apply(x.adjoint()), k.embed.apply(x).adjoint()) == 0.0);
    }
}

TEST_CASE("representable families evaluate by composition and pass naturality") {
    rng::Engine eng(23);
    const FdCStarAlgebra a = make_algebra({2});
    const FdCStarAlgebra b = make_algebra({1, 1});
    const SuperOperator f = rng::random_cp(eng, a, b, 2);
    const NaturalFamily fam = natural_family_from_map(f, 3);

    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 1 + rep % 3;
        const SuperOperator g = random_cp_into_matrix(eng, b, n);
        CHECK(sup_distance(fam.component(n, g), compose(g, f)) == 0.0);
    }

    const NaturalityReport rep = check_naturality(fam, 50, 7);
    CHECK(rep.pass);
    CHECK(rep.general_max_residual <= 1e-9);
    CHECK(rep.consequence_max_residual <= 1e-9);

    // The identity's family components are the identity on hom-sets.
    const NaturalFamily idfam = natural_family_from_map(SuperOperator::identity(b), 2);
    const SuperOperator g = random_cp_into_matrix(eng, b, 2);
    CHECK(sup_distance(idfam.component(2, g), g) == 0.0);

    CHECK_THROWS_AS(natural_family_from_map(transpose_map(2), 2), NotCompletelyPositive);
}

TEST_CASE("twisted families are caught within 50 probes") {
    const FdCStarAlgebra a = make_algebra({2});
    const FdCStarAlgebra b = make_algebra({2});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const NaturalFamily fam = builtin_family("twist-transpose", a, b, 2, seed);
        const NaturalityReport rep = check_naturality(fam, 50, seed + 100);
        CHECK_FALSE(rep.pass);
        CHECK(rep.probes_run <= 50);
        REQUIRE(rep.violation.has_value());
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const NaturalFamily fam = builtin_family("drop-additivity", a, b, 2, seed);
        const NaturalityReport rep = check_naturality(fam, 50, seed + 200);
        CHECK_FALSE(rep.pass);
    }
    CHECK_THROWS_AS(builtin_family("no-such-family", a, b, 2, 0), ParseError);
}

TEST_CASE("reconstruction: the headline round trip") {
    rng::Engine eng(29);
    const std::vector<std::vector<std::size_t>> shapes = {{1}, {2}, {3}, {1, 1}, {2, 1}, {2, 2}};
    int done = 0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        for (std::size_t j = 0; j < shapes.size(); ++j) {
            const FdCStarAlgebra a = make_algebra(shapes[i]);
            const FdCStarAlgebra b = make_algebra(shapes[j]);
            const SuperOperator f = rng::random_cp(eng, a, b, 2);
            const NaturalFamily fam = natural_family_from_map(f, b.total_dim());
            const SuperOperator rec = reconstruct_map_from_family(fam, 25, 1000 + done);
            CHECK(sup_distance(rec, f) <= 1e-9);
            ++done;
        }
    }
    CHECK(done == 36);

    // Identity reconstructs to the identity.
    const FdCStarAlgebra m2 = make_algebra({2});
    const SuperOperator rec_id = reconstruct_map_from_family(
        natural_family_from_map(SuperOperator::identity(m2), 2), 25, 3);
    CHECK(sup_distance(rec_id, SuperOperator::identity(m2)) <= 1e-10);
}

TEST_CASE("reconstruction error paths") {
    rng::Engine eng(31);
    const FdCStarAlgebra a = make_algebra({2});
    const FdCStarAlgebra b = make_algebra({2, 1});
    const SuperOperator f = rng::random_cp(eng, a, b, 2);

    CHECK_THROWS_AS(
        reconstruct_map_from_family(natural_family_from_map(f, b.total_dim() - 1), 25, 0),
        TruncationTooSmall);

    const NaturalFamily twisted = builtin_family("twist-transpose", a, b, b.total_dim(), 5);
    CHECK_THROWS_AS(reconstruct_map_from_family(twisted, 50, 0), NotNatural);
}

TEST_CASE("faithfulness: families of distinct maps differ at the embedding probe") {
    rng::Engine eng(37);
    const FdCStarAlgebra a = make_algebra({2});
    const FdCStarAlgebra b = make_algebra({2, 1});
    const KaroubiData k = karoubi_idempotent(b);
    for (int rep = 0; rep < 25; ++rep) {
        const SuperOperator f = rng::random_cp(eng, a, b, 2);
        const SuperOperator g = rng::random_cp(eng, a, b, 2);
        if (sup_distance(f, g) < 1e-3) continue;
        const NaturalFamily ff = natural_family_from_map(f, b.total_dim());
        const NaturalFamily fg = natural_family_from_map(g, b.total_dim());
        const double gap =
            sup_distance(ff.component(k.d, k.embed), fg.component(k.d, k.embed));
        // The embedding is entrywise faithful, so the gap survives unchanged.
        CHECK(gap == doctest::Approx(sup_distance(f, g)).epsilon(1e-12));
        CHECK(gap >= 1e-3);
    }
}
