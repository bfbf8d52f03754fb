#pragma once

#include <cstdint>
#include <random>

#include "opalg/superop.hpp"

namespace opalg::rng {

using Engine = std::mt19937_64;

ComplexMatrix gaussian_matrix(Engine& eng, std::size_t rows, std::size_t cols);
std::vector<Complex> gaussian_vector(Engine& eng, std::size_t n);

AlgebraElement gaussian_element(Engine& eng, const FdCStarAlgebra& a);
AlgebraElement random_hermitian(Engine& eng, const FdCStarAlgebra& a);
/// y^* y for a Gaussian y; positive by construction.
AlgebraElement random_positive(Engine& eng, const FdCStarAlgebra& a);

/// CP map M_m -> M_n from `ops` Gaussian Kraus operators (scaled ~1/sqrt(ops*m)).
SuperOperator random_kraus_cp(Engine& eng, std::size_t m, std::size_t n, std::size_t ops);

/// CP map A -> B between arbitrary fd C*-algebras: P_B o K o iota_A with K a
/// random Kraus map between the block-diagonal embeddings.
SuperOperator random_cp(Engine& eng, const FdCStarAlgebra& a, const FdCStarAlgebra& b,
                        std::size_t ops = 2);

/// Gaussian linear map A -> B with no positivity structure.
SuperOperator random_superoperator(Engine& eng, const FdCStarAlgebra& a, const FdCStarAlgebra& b);

}  // namespace opalg::rng
