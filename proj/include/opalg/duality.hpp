#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "opalg/superop.hpp"

namespace opalg {

/// A linear functional on an fd C*-algebra, stored through the trace pairing
/// as a density: phi(a) = trace(rho * a). phi is positive iff rho is, and
/// Hermitian iff rho is.
class Functional {
public:
    explicit Functional(AlgebraElement density) : density_(std::move(density)) {}

    const FdCStarAlgebra& algebra() const { return density_.algebra(); }
    const AlgebraElement& density() const { return density_; }

private:
    AlgebraElement density_;
};

Complex eval(const Functional& phi, const AlgebraElement& a);
Functional functional_from_density(const AlgebraElement& rho);
const AlgebraElement& density_from_functional(const Functional& phi);

/// The trace-pairing adjoint of f: A -> B, a map on densities D: B -> A with
/// trace(D(rho) * a) = trace(rho * f(a)). In unit coordinates this is a pure
/// transpose-and-reindex of the action matrix, so it is exact.
SuperOperator dual_map(const SuperOperator& f);

/// phi o f for phi on B and f: A -> B; the density maps through dual_map(f).
Functional precompose(const Functional& phi, const SuperOperator& f);

/// phi = re + i*im with both parts Hermitian; densities (rho + rho^*)/2 and
/// (rho - rho^*)/(2i).
std::pair<Functional, Functional> hermitian_parts(const Functional& phi);

/// Jordan split of a Hermitian functional into orthogonal positive parts.
/// Throws NotHermitian.
std::pair<Functional, Functional> jordan_decompose(const Functional& phi, double tol = 1e-9);

/// A cone map between positive-functional cones, given as a black-box
/// evaluation contract NPLF(source) -> NPLF(target). Additivity, homogeneity
/// and positivity are claims, verified by extend_cone_map before use.
struct ConeMap {
    FdCStarAlgebra source;
    FdCStarAlgebra target;
    std::function<Functional(const Functional&)> eval;
};

struct ConeMapCheckOptions {
    std::size_t law_samples = 24;
    std::size_t decomposition_perturbations = 10;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    /// Trace-normalize the sampled positive probe functionals (probe with
    /// states instead of arbitrary cone points). The cone laws themselves are
    /// unaffected; functionals stay unnormalized throughout the library.
    bool normalize_probes = false;
};

/// The linear extension of a verified cone map: on a Hermitian functional,
/// lambda(phi) = g(phi_+) - g(phi_-) over the Jordan split; general
/// functionals go through their Hermitian parts. Construction verifies the
/// cone laws, well-definedness under perturbed decompositions, and linearity
/// on sampled combinations; any failure raises NotConeHomomorphism naming the
/// violated law.
class LinearExtension {
public:
    LinearExtension(ConeMap g, const ConeMapCheckOptions& opts);

    Functional operator()(const Functional& phi) const;
    /// The extension assembled as a matrix on densities (source -> target).
    const SuperOperator& density_action() const { return action_; }
    const ConeMap& cone_map() const { return g_; }

private:
    ConeMap g_;
    SuperOperator action_;
};

LinearExtension extend_cone_map(const ConeMap& g, const ConeMapCheckOptions& opts = {});

/// Reconstructs the positive map f: A -> B inducing a cone map
/// g: NPLF(B) -> NPLF(A), i.e. with precompose(phi, f) = g(phi) for positive
/// phi. Verifies the recovered map against g on samples and checks it
/// preserves positivity; failures raise NotConeHomomorphism.
SuperOperator reconstruct_positive_map(const ConeMap& g, const ConeMapCheckOptions& opts = {});

}  // namespace opalg
