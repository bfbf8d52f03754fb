#include "opalg/demo.hpp"

#include <cstdio>

#include "opalg/presheaf.hpp"
#include "opalg/random.hpp"

namespace opalg {

namespace {

std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", r);
    return buf;
}

}  // namespace

std::string demo_density_report(const FdCStarAlgebra& a, const FdCStarAlgebra& b,
                                std::uint64_t seed, std::size_t trials) {
    const double bound = 1e-9;
    std::string out = "density demo: A=" + a.describe() + " B=" + b.describe() + " seed=" +
                      std::to_string(seed) + " trials=" + std::to_string(trials) + "\n";
    rng::Engine eng(seed);
    double max_residual = 0.0;
    std::size_t passed = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const SuperOperator f = rng::random_cp(eng, a, b, 2);
        const NaturalFamily fam = natural_family_from_map(f, b.total_dim());
        const SuperOperator rec =
            reconstruct_map_from_family(fam, 25, seed * 1000 + t, 1e-9);
        const double residual = sup_distance(rec, f);
        max_residual = std::max(max_residual, residual);
        const bool ok = residual <= bound;
        if (ok) ++passed;
        out += "trial " + std::to_string(t + 1) + ": reconstruction residual " +
               format_residual(residual) + (ok ? " ok" : " FAIL") + "\n";
    }
    out += "max residual " + format_residual(max_residual) + "\n";
    out += "result: " + std::to_string(passed) + "/" + std::to_string(trials) +
           " reconstructions within " + format_residual(bound) + "\n";
    return out;
}

}  // namespace opalg
