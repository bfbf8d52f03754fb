#include "opalg/random.hpp"

#include <cmath>

namespace opalg::rng {

ComplexMatrix gaussian_matrix(Engine& eng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = Complex(gauss(eng), gauss(eng));
    return m;
}

std::vector<Complex> gaussian_vector(Engine& eng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> v(n);
    for (Complex& c : v) c = Complex(gauss(eng), gauss(eng));
    return v;
}

AlgebraElement gaussian_element(Engine& eng, const FdCStarAlgebra& a) {
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(a.num_blocks());
    for (std::size_t b = 0; b < a.num_blocks(); ++b)
        blocks.push_back(gaussian_matrix(eng, a.block_dim(b), a.block_dim(b)));
    return {a, std::move(blocks)};
}

AlgebraElement random_hermitian(Engine& eng, const FdCStarAlgebra& a) {
    const AlgebraElement x = gaussian_element(eng, a);
    AlgebraElement h = x;
    for (std::size_t b = 0; b < a.num_blocks(); ++b)
        h.block(b) = 0.5 * (x.block(b) + x.block(b).adjoint());
    return h;
}

AlgebraElement random_positive(Engine& eng, const FdCStarAlgebra& a) {
    const AlgebraElement y = gaussian_element(eng, a);
    return y.adjoint() * y;
}

SuperOperator random_kraus_cp(Engine& eng, std::size_t m, std::size_t n, std::size_t ops) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(ops);
    const double scale = 1.0 / std::sqrt(static_cast<double>(ops * m));
    for (std::size_t i = 0; i < ops; ++i)
        kraus.push_back(Complex(scale) * gaussian_matrix(eng, m, n));
    return map_from_kraus(kraus);
}

SuperOperator random_cp(Engine& eng, const FdCStarAlgebra& a, const FdCStarAlgebra& b,
                        std::size_t ops) {
    const SuperOperator k = random_kraus_cp(eng, a.total_dim(), b.total_dim(), ops);
    return compose(block_compression(b), compose(k, block_embedding(a)));
}

SuperOperator random_superoperator(Engine& eng, const FdCStarAlgebra& a, const FdCStarAlgebra& b) {
    return {a, b, gaussian_matrix(eng, b.vec_dim(), a.vec_dim())};
}

}  // namespace opalg::rng
