#pragma once

#include <cstdint>
#include <string>

#include "opalg/algebra.hpp"

namespace opalg {

/// Runs `trials` rounds of sample-CP-map -> build-family -> reconstruct ->
/// compare between A and B and renders a plain-text report. Deterministic:
/// the same inputs and seed produce the identical byte sequence.
std::string demo_density_report(const FdCStarAlgebra& a, const FdCStarAlgebra& b,
                                std::uint64_t seed, std::size_t trials);

}  // namespace opalg
