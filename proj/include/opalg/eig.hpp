#pragma once

#include <vector>

#include "opalg/matrix.hpp"

namespace opalg {

/// Eigendecomposition of a Hermitian matrix: a = vectors * diag(values) * vectors^†,
/// values ascending, eigenvectors in the columns of a unitary matrix.
struct HermitianEig {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Cyclic complex Jacobi. The input is symmetrized as (a + a^†)/2 first, so
/// callers are expected to have checked Hermiticity at their own tolerance.
HermitianEig hermitian_eig(const ComplexMatrix& a);

double min_eigenvalue(const ComplexMatrix& a);

}  // namespace opalg
