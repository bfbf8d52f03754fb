#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "opalg/algebra.hpp"
#include "opalg/errors.hpp"
#include "opalg/random.hpp"

using namespace opalg;

TEST_CASE("make_algebra derives dimensions and rejects bad block lists") {
    const FdCStarAlgebra m2 = make_algebra({2});
    CHECK(m2.total_dim() == 2);
    CHECK(m2.vec_dim() == 4);

    const FdCStarAlgebra bits = make_algebra({1, 1});
    CHECK(bits.total_dim() == 2);
    CHECK(bits.vec_dim() == 2);
    CHECK(bits.commutative());

    const FdCStarAlgebra mixed = make_algebra({2, 3});
    CHECK(mixed.total_dim() == 5);
    CHECK(mixed.vec_dim() == 13);
    CHECK_FALSE(mixed.commutative());

    CHECK_THROWS_AS(make_algebra({}), EmptyBlockList);
    CHECK_THROWS_AS(make_algebra({2, 0}), NonPositiveBlockDim);
}

TEST_CASE("involution laws hold on random elements") {
    rng::Engine eng(17);
    const FdCStarAlgebra a = make_algebra({2, 3});
    for (int rep = 0; rep < 50; ++rep) {
        const AlgebraElement x = rng::gaussian_element(eng, a);
        const AlgebraElement y = rng::gaussian_element(eng, a);
        CHECK(max_abs_diff(x.adjoint().adjoint(), x) == 0.0);
        CHECK(max_abs_diff((x * y).adjoint(), y.adjoint() * x.adjoint()) < 1e-12);
        const Complex alpha(0.3, -1.2);
        CHECK(max_abs_diff((alpha * x).adjoint(), std::conj(alpha) * x.adjoint()) < 1e-13);
        CHECK(max_abs_diff(AlgebraElement::identity(a) * x, x) < 1e-14);
    }
}

TEST_CASE("adjoint is the blockwise conjugate transpose") {
    const FdCStarAlgebra m2 = make_algebra({2});
    AlgebraElement x = AlgebraElement::zero(m2);
    x.block(0)(0, 1) = 1.0;
    const AlgebraElement xs = x.adjoint();
    CHECK(xs.block(0)(0, 1) == Complex(0.0));
    CHECK(xs.block(0)(1, 0) == Complex(1.0));
}

TEST_CASE("operations reject elements of a different algebra") {
    rng::Engine eng(3);
    const AlgebraElement x = rng::gaussian_element(eng, make_algebra({2}));
    const AlgebraElement y = rng::gaussian_element(eng, make_algebra({1, 1}));
    CHECK_THROWS_AS(x + y, AlgebraMismatch);
    CHECK_THROWS_AS(x * y, AlgebraMismatch);
}

TEST_CASE("positivity verdicts") {
    const FdCStarAlgebra m3 = make_algebra({3});
    CHECK(is_positive_element(AlgebraElement::identity(m3)).positive);

    const FdCStarAlgebra m2 = make_algebra({2});
    AlgebraElement d = AlgebraElement::zero(m2);
    d.block(0)(0, 0) = 1.0;
    d.block(0)(1, 1) = -2.0;
    const PositivityReport rep = is_positive_element(d);
    CHECK_FALSE(rep.positive);
    CHECK(rep.failure == PositivityReport::Failure::negative_eigenvalue);
    CHECK(rep.block == 0);
    CHECK(rep.value == doctest::Approx(-2.0).epsilon(1e-12));

    AlgebraElement nh = AlgebraElement::zero(m2);
    nh.block(0)(0, 1) = 1.0;  // not Hermitian
    const PositivityReport rep2 = is_positive_element(nh);
    CHECK_FALSE(rep2.positive);
    CHECK(rep2.failure == PositivityReport::Failure::not_hermitian);
}

TEST_CASE("y*y is positive, the definition oracle") {
    rng::Engine eng(23);
    for (const auto& dims : {std::vector<std::size_t>{2}, {3}, {2, 3}, {1, 1}, {1, 2, 1}}) {
        const FdCStarAlgebra a = make_algebra(dims);
        for (int rep = 0; rep < 40; ++rep) {
            const AlgebraElement y = rng::gaussian_element(eng, a);
            CHECK(is_positive_element(y.adjoint() * y).positive);
        }
    }
}

TEST_CASE("the induced order is reflexive and transitive on built chains") {
    rng::Engine eng(29);
    const FdCStarAlgebra a = make_algebra({2, 2});
    for (int rep = 0; rep < 25; ++rep) {
        const AlgebraElement x = rng::random_hermitian(eng, a);
        CHECK(is_positive_element(x - x).positive);  // x <= x
        const AlgebraElement y = x + rng::random_positive(eng, a);
        const AlgebraElement z = y + rng::random_positive(eng, a);
        CHECK(is_positive_element(y - x).positive);
        CHECK(is_positive_element(z - y).positive);
        CHECK(is_positive_element(z - x).positive);  // transitivity instance
    }
}

TEST_CASE("positive_decomposition splits the spectrum") {
    const FdCStarAlgebra m2 = make_algebra({2});
    AlgebraElement d = AlgebraElement::zero(m2);
    d.block(0)(0, 0) = 1.0;
    d.block(0)(1, 1) = -2.0;
    const auto [plus, minus] = positive_decomposition(d);
    CHECK(std::abs(plus.block(0)(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(plus.block(0)(1, 1)) < 1e-12);
    CHECK(std::abs(minus.block(0)(0, 0)) < 1e-12);
    CHECK(std::abs(minus.block(0)(1, 1) - 2.0) < 1e-12);

    rng::Engine eng(31);
    const AlgebraElement pos = rng::random_positive(eng, m2);
    const auto [p2, m2part] = positive_decomposition(pos);
    CHECK(max_abs_diff(p2, pos) < 1e-10 * (1.0 + pos.max_abs()));
    CHECK(m2part.max_abs() < 1e-10 * (1.0 + pos.max_abs()));

    AlgebraElement nh = AlgebraElement::zero(m2);
    nh.block(0)(0, 1) = 1.0;
    CHECK_THROWS_AS(positive_decomposition(nh), NotHermitian);
}

TEST_CASE("positive_decomposition: 200 random Hermitian samples per shape") {
    rng::Engine eng(37);
    for (const auto& dims : {std::vector<std::size_t>{2}, {3}, {2, 3}, {1, 1}}) {
        const FdCStarAlgebra a = make_algebra(dims);
        for (int rep = 0; rep < 200; ++rep) {
            const AlgebraElement x = rng::random_hermitian(eng, a);
            const auto [plus, minus] = positive_decomposition(x);
            const double scale = 1.0 + x.max_abs();
            CHECK(is_positive_element(plus).positive);
            CHECK(is_positive_element(minus).positive);
            CHECK(max_abs_diff(plus - minus, x) <= 1e-10 * scale);
            CHECK((plus * minus).max_abs() <= 1e-10 * scale * scale);
        }
    }
}

TEST_CASE("matrix_algebra_over block shapes") {
    CHECK(matrix_algebra_over(make_algebra({3}), 2).extended().block_dims() ==
          std::vector<std::size_t>{6});
    CHECK(matrix_algebra_over(make_algebra({2, 3}), 1).extended() == make_algebra({2, 3}));
    CHECK(matrix_algebra_over(make_algebra({1, 1}), 2).extended().block_dims() ==
          std::vector<std::size_t>{2, 2});
}

TEST_CASE("embed/extract round trip and multiplicativity") {
    rng::Engine eng(41);
    for (const auto& dims : {std::vector<std::size_t>{2}, {1, 1}, {2, 1}}) {
        const FdCStarAlgebra a = make_algebra(dims);
        for (std::size_t n : {2, 3}) {
            const MatrixExtension ext = matrix_algebra_over(a, n);

            std::vector<std::vector<AlgebraElement>> grid, hrid;
            for (std::size_t u = 0; u < n; ++u) {
                grid.emplace_back();
                hrid.emplace_back();
                for (std::size_t v = 0; v < n; ++v) {
                    grid.back().push_back(rng::gaussian_element(eng, a));
                    hrid.back().push_back(rng::gaussian_element(eng, a));
                }
            }
            const AlgebraElement x = ext.embed(grid);
            const auto back = ext.extract(x);
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v)
                    CHECK(max_abs_diff(back[u][v], grid[u][v]) == 0.0);

            const AlgebraElement y = rng::gaussian_element(eng, ext.extended());
            CHECK(max_abs_diff(ext.embed(ext.extract(y)), y) == 0.0);

            // Grid product computed cellwise must match the embedded product.
            const AlgebraElement h = ext.embed(hrid);
            std::vector<std::vector<AlgebraElement>> prod(
                n, std::vector<AlgebraElement>(n, AlgebraElement::zero(a)));
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v)
                    for (std::size_t w = 0; w < n; ++w)
                        prod[u][v] += grid[u][w] * hrid[w][v];
            CHECK(max_abs_diff(x * h, ext.embed(prod)) < 1e-11 * (1.0 + x.max_abs() * h.max_abs()));

            // The embedding preserves adjoints: (embed G)^* = embed of the
            // transposed grid of adjoints.
            std::vector<std::vector<AlgebraElement>> gstar(
                n, std::vector<AlgebraElement>(n, AlgebraElement::zero(a)));
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v) gstar[u][v] = grid[v][u].adjoint();
            CHECK(max_abs_diff(x.adjoint(), ext.embed(gstar)) == 0.0);
        }
    }
}

TEST_CASE("grid compression v* y v matches the cellwise sum") {
    rng::Engine eng(47);
    const FdCStarAlgebra a = make_algebra({2, 1});
    const MatrixExtension ext = matrix_algebra_over(a, 3);
    for (int rep = 0; rep < 10; ++rep) {
        const AlgebraElement y = rng::gaussian_element(eng, ext.extended());
        const std::vector<Complex> v = rng::gaussian_vector(eng, 3);
        AlgebraElement want = AlgebraElement::zero(a);
        const auto grid = ext.extract(y);
        for (std::size_t u = 0; u < 3; ++u)
            for (std::size_t w = 0; w < 3; ++w)
                want += std::conj(v[u]) * v[w] * grid[u][w];
        CHECK(max_abs_diff(ext.compress(y, v), want) < 1e-12 * (1.0 + want.max_abs()));
    }
    CHECK_THROWS_AS(ext.compress(AlgebraElement::zero(ext.extended()), {1.0}), ShapeMismatch);
}

TEST_CASE("malformed grids are rejected") {
    const FdCStarAlgebra a = make_algebra({2});
    const MatrixExtension ext = matrix_algebra_over(a, 2);
    std::vector<std::vector<AlgebraElement>> ragged(1);
    ragged[0].push_back(AlgebraElement::zero(a));
    CHECK_THROWS_AS(ext.embed(ragged), ShapeMismatch);
}
