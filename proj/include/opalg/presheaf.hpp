#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "opalg/duality.hpp"
#include "opalg/random.hpp"
#include "opalg/superop.hpp"

namespace opalg {

/// Morphism m -> n of the matrix category: an m x n complex matrix.
/// Composition is matrix multiplication, identities are identity matrices.
struct NMatMorphism {
    std::size_t source;
    std::size_t target;
    ComplexMatrix matrix;
};

NMatMorphism nmat_identity(std::size_t n);
/// v followed by w: (m -> n) then (n -> p) gives m -> p via the matrix product.
NMatMorphism nmat_compose(const NMatMorphism& v, const NMatMorphism& w);
/// The self-duality V -> V^T, swapping source and target.
NMatMorphism nmat_dual(const NMatMorphism& v);

/// Morphism m -> n of the CP category: a completely positive map M_m -> M_n.
/// Complete positivity is validated at construction.
class NCpMorphism {
public:
    explicit NCpMorphism(SuperOperator map, double tol = 1e-9);

    std::size_t source() const { return map_.domain().block_dim(0); }
    std::size_t target() const { return map_.codomain().block_dim(0); }
    const SuperOperator& map() const { return map_; }

private:
    SuperOperator map_;
};

/// The contravariant functor V -> (V^T)^* (-) V^T from matrix morphisms to CP
/// morphisms; F(V): M_n -> M_m for V: m -> n.
NCpMorphism functor_F(const NMatMorphism& v);

// The bijection between positive functionals on M_n(A) and CP maps A -> M_n.
// Slot convention: f(a)[i][j] = s(grid with a in slot (i,j)), pinned by the
// round-trip tests. In densities this is an exact reindexing.

/// Throws NotCompletelyPositive unless f is CP with codomain a single M_n.
Functional cpmap_to_state(const SuperOperator& f, double tol = 1e-9);
/// Throws NotPositiveFunctional unless s is positive on M_n(A).
SuperOperator state_to_cpmap(const Functional& s, const FdCStarAlgebra& a, std::size_t n,
                             double tol = 1e-9);

ChoiElement choi_element_of(const SuperOperator& f, double tol = 1e-9);
SuperOperator map_from_choi_element(const ChoiElement& ce, double tol = 1e-9);

namespace detail {
/// The two directions of the bijection as plain linear translations, no
/// positivity validation. Used to exercise the positive <-> CP equivalence
/// from both sides in tests.
AlgebraElement state_density_of(const SuperOperator& f);
SuperOperator cpmap_of_density(const AlgebraElement& rho, const FdCStarAlgebra& a, std::size_t n);
}  // namespace detail

/// j: M_2n -> M_2n, (a b; c d) -> (a 0; 0 d). Idempotent and CP.
NCpMorphism j_map(std::size_t n);
/// t: M_2n -> M_n, (a b; c d) -> a + d.
NCpMorphism t_map(std::size_t n);
/// p: M_n -> M_2n, a -> (a 0; 0 0).
NCpMorphism p_map(std::size_t n);
/// q: M_n -> M_2n, a -> (0 0; 0 a).
NCpMorphism q_map(std::size_t n);
/// r: M_n -> M_2n, a -> (a 0; 0 a); t o r = 2 id.
NCpMorphism r_map(std::size_t n);

/// Pairs CP maps f, g: A -> M_n into the j-fixed CP map h: A -> M_2n with
/// h(a) = diag(f(a), g(a)); t o h = f + g. Throws NotCompletelyPositive.
SuperOperator pair_encode(const SuperOperator& f, const SuperOperator& g, double tol = 1e-9);
/// Inverse of pair_encode on j-fixed maps. Throws NotJFixed when j o h != h.
std::pair<SuperOperator, SuperOperator> pair_decode(const SuperOperator& h, double tol = 1e-9);

/// The idempotent splitting that realizes A inside M_d, d = A.total_dim():
/// embed o compress = e (idempotent CP on M_d), compress o embed = id_A.
struct KaroubiData {
    std::size_t d;
    NCpMorphism idempotent;
    SuperOperator embed;
    SuperOperator compress;
};
KaroubiData karoubi_idempotent(const FdCStarAlgebra& a);

/// A truncated family of hom-set functions phi_n: CP(B, M_n) -> CP(A, M_n),
/// n <= truncation, given as a black-box evaluation contract. Naturality in n
/// is a claim, checked by check_naturality.
struct NaturalFamily {
    FdCStarAlgebra source;  // A
    FdCStarAlgebra target;  // B
    std::size_t truncation;
    std::function<SuperOperator(std::size_t n, const SuperOperator& g)> component;
};

/// The representable family phi_n(g) = g o f of a CP map f: A -> B.
NaturalFamily natural_family_from_map(const SuperOperator& f, std::size_t truncation,
                                      double tol = 1e-9);

struct NaturalityViolation {
    std::string probe_kind;
    std::size_t m = 0;
    std::size_t n = 0;
    double residual = 0.0;
    std::optional<SuperOperator> h;
    std::optional<SuperOperator> g;
};

struct NaturalityReport {
    bool pass = false;
    /// Worst residual over the general naturality probes.
    double general_max_residual = 0.0;
    /// Worst residual over the scalar / additivity consequence probes.
    double consequence_max_residual = 0.0;
    std::size_t probes_run = 0;
    std::optional<NaturalityViolation> violation;
};

/// Probes phi_n(h o g) = h o phi_m(g) over random (h, g) with h drawn from
/// conjugations, scalar maps, the j/t/p/q/r family and random Kraus CP maps,
/// then replays the cone-homomorphism consequences (scalar multiples via
/// scalar_map probes, addition via t o pair_encode). A violation is returned
/// as data; a full pass is a pass-at-budget, not a proof.
NaturalityReport check_naturality(const NaturalFamily& fam, std::size_t probes,
                                  std::uint64_t seed, double tol = 1e-9);

/// The density-theorem reconstruction: with (d, e, iota, P) the idempotent
/// splitting of B, the unique CP map inducing the family is f = P o phi_d(iota).
/// Throws TruncationTooSmall (truncation < total_dim(B)), NotNatural (probe
/// violation), or ReconstructionMismatch (the family is not hom(-, f) for any f).
SuperOperator reconstruct_map_from_family(const NaturalFamily& fam, std::size_t probes = 50,
                                          std::uint64_t seed = 0, double tol = 1e-9);

/// A random CP map B -> M_m drawn through the state <-> CP bijection, so the
/// whole CP cone is reachable.
SuperOperator random_cp_into_matrix(rng::Engine& eng, const FdCStarAlgebra& b, std::size_t m);

/// Named adversarial families for tests and the CLI: "twist-transpose"
/// (the n = 2 component is composed with the transpose) and "drop-additivity"
/// (components rescaled by a non-additive function of the input).
NaturalFamily builtin_family(const std::string& name, const FdCStarAlgebra& a,
                             const FdCStarAlgebra& b, std::size_t truncation, std::uint64_t seed);
std::vector<std::string> builtin_family_names();

}  // namespace opalg
