#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opalg/demo.hpp"
#include "opalg/duality.hpp"
#include "opalg/errors.hpp"
#include "opalg/json_io.hpp"
#include "opalg/presheaf.hpp"
#include "opalg/random.hpp"

// Exit codes: 0 = verdict true / success, 1 = verdict false (a machine-readable
// witness block goes to stdout), 2 = input or usage error.

namespace {

using namespace opalg;
using nlohmann::json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

std::vector<std::size_t> parse_dims(const std::string& s) {
    std::vector<std::size_t> dims;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            const long long v = std::stoll(tok);
            if (v <= 0) throw ParseError("block dimensions must be positive: '" + s + "'");
            dims.push_back(static_cast<std::size_t>(v));
        } catch (const std::invalid_argument&) {
            throw ParseError("cannot parse block dimension '" + tok + "'");
        } catch (const std::out_of_range&) {
            throw ParseError("block dimension out of range: '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (dims.empty()) throw ParseError("empty dimension list");
    return dims;
}

json complex_list_json(const std::vector<Complex>& v) {
    json arr = json::array();
    for (const Complex& c : v) arr.push_back(json::array({c.real(), c.imag()}));
    return arr;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::write_json_file(out_path, j);
}

int cmd_check_cp(const std::string& path, double tol) {
    const SuperOperator f = io::superop_from_json(io::load_json_file(path));
    const CpReport rep = is_completely_positive(f, tol);
    std::printf("min Choi eigenvalue (lifted): %.15g\n", rep.min_choi_eigenvalue);
    if (rep.completely_positive) {
        std::printf("verdict: completely positive\n");
        return kExitTrue;
    }
    std::printf("verdict: not completely positive\n");
    std::cout << json{{"verdict", "not-completely-positive"},
                      {"min_choi_eigenvalue", rep.min_choi_eigenvalue},
                      {"witness_vector", complex_list_json(rep.witness)}}
                     .dump()
              << "\n";
    return kExitFalse;
}

int cmd_check_positive(const std::string& path, double tol, unsigned budget,
                       std::uint64_t seed) {
    const SuperOperator f = io::superop_from_json(io::load_json_file(path));
    const MapPositivityReport rep = is_positive_map(f, tol, budget, seed);
    switch (rep.verdict) {
        case MapPositivityReport::Verdict::positive:
            std::printf("verdict: positive (%s)\n", rep.certificate.c_str());
            return kExitTrue;
        case MapPositivityReport::Verdict::inconclusive:
            std::printf("verdict: inconclusive (%s)\n", rep.certificate.c_str());
            return kExitTrue;
        case MapPositivityReport::Verdict::not_positive: {
            std::printf("verdict: not positive (%s)\n", rep.certificate.c_str());
            std::cout << json{{"verdict", "not-positive"},
                              {"witness_element", io::element_to_json(*rep.witness)},
                              {"image_min_eigenvalue", rep.witness_eigenvalue}}
                             .dump()
                      << "\n";
            return kExitFalse;
        }
    }
    return kExitUsage;
}

int cmd_choi(const std::string& path, const std::string& out_path) {
    const SuperOperator f = io::superop_from_json(io::load_json_file(path));
    emit(io::matrix_to_json(choi_of(f)), out_path);
    return kExitTrue;
}

int cmd_kraus(const std::string& path, double tol, const std::string& out_path) {
    const SuperOperator f = io::superop_from_json(io::load_json_file(path));
    try {
        const std::vector<ComplexMatrix> kraus = kraus_decomposition(f, tol);
        std::printf("kraus operators: %zu\n", kraus.size());
        emit(io::kraus_to_json(f, kraus), out_path);
        return kExitTrue;
    } catch (const NotCompletelyPositive& e) {
        std::printf("verdict: not completely positive\n");
        std::cout << json{{"verdict", "not-completely-positive"},
                          {"min_choi_eigenvalue", e.min_eigenvalue}}
                         .dump()
                  << "\n";
        return kExitFalse;
    }
}

int cmd_amplify(const std::string& path, std::size_t n, const std::string& out_path) {
    const SuperOperator f = io::superop_from_json(io::load_json_file(path));
    if (n == 0) throw ParseError("amplification order must be >= 1");
    emit(io::superop_to_json(amplify(f, n)), out_path);
    return kExitTrue;
}

int cmd_lemma_check(const std::string& fn_path, const std::string& f1_path, double tol) {
    const SuperOperator f_n = io::superop_from_json(io::load_json_file(fn_path));
    const SuperOperator f_1 = io::superop_from_json(io::load_json_file(f1_path));
    const LemmaReport rep = lemma_compression_check(f_n, f_1, tol);
    std::printf("n = %zu\n", rep.n);
    std::printf("compression condition: %s (max residual %.3e)\n",
                rep.condition_holds ? "holds" : "fails", rep.max_residual);
    std::printf("amplification check:   %s (superoperator distance %.3e)\n",
                rep.amplification_holds ? "holds" : "fails", rep.superop_distance);
    if (rep.condition_holds && rep.amplification_holds) return kExitTrue;
    std::cout << json{{"verdict", "lemma-check-failed"},
                      {"condition_residual", rep.max_residual},
                      {"superoperator_distance", rep.superop_distance}}
                     .dump()
              << "\n";
    return kExitFalse;
}

ConeMap builtin_cone_map(const std::string& name, const FdCStarAlgebra& source,
                         const FdCStarAlgebra& target, std::uint64_t seed) {
    if (name != "non-additive") throw ParseError("unknown builtin cone map '" + name + "'");
    rng::Engine eng(seed);
    const AlgebraElement tau = rng::random_positive(eng, target);
    return {source, target, [tau](const Functional& phi) {
                const double w = phi.density().frobenius_norm();
                return Functional(Complex(w) * tau);
            }};
}

int cmd_reconstruct_cone(const std::string& path, const std::string& out_path, double tol,
                         std::uint64_t seed, bool normalize) {
    const json j = io::load_json_file(path);
    ConeMapCheckOptions opts;
    opts.seed = seed;
    opts.tol = tol;
    opts.normalize_probes = normalize;
    try {
        if (j.contains("builtin")) {
            const FdCStarAlgebra source = io::algebra_from_json(j.at("source"));
            const FdCStarAlgebra target = io::algebra_from_json(j.at("target"));
            const std::uint64_t cone_seed = j.value("seed", 0);
            const ConeMap g = builtin_cone_map(j["builtin"].get<std::string>(), source, target,
                                               cone_seed);
            const SuperOperator f = reconstruct_positive_map(g, opts);
            emit(io::superop_to_json(f), out_path);
            return kExitTrue;
        }
        // Representable case: the cone map induced by a positive map f0,
        // g(phi) = phi o f0; reconstruction should return f0.
        const SuperOperator f0 = io::superop_from_json(j.contains("cone_map_of")
                                                           ? j["cone_map_of"]
                                                           : j);
        const ConeMap g{f0.codomain(), f0.domain(),
                        [f0](const Functional& phi) { return precompose(phi, f0); }};
        const SuperOperator f = reconstruct_positive_map(g, opts);
        std::printf("round-trip distance to the inducing map: %.3e\n", sup_distance(f, f0));
        emit(io::superop_to_json(f), out_path);
        return kExitTrue;
    } catch (const NotConeHomomorphism& e) {
        std::printf("verdict: not a cone homomorphism (law: %s)\n", e.law.c_str());
        std::cout << json{{"verdict", "not-cone-homomorphism"},
                          {"law", e.law},
                          {"detail", e.what()}}
                         .dump()
                  << "\n";
        return kExitFalse;
    }
}

int cmd_reconstruct_natural(const std::string& path, const std::vector<std::string>& dims,
                            std::size_t probes, std::uint64_t seed, double tol,
                            const std::string& out_path) {
    const json j = io::load_json_file(path);
    std::optional<NaturalFamily> fam;
    std::optional<SuperOperator> original;
    if (j.contains("family_of")) {
        original = io::superop_from_json(j["family_of"]);
        const std::size_t trunc = j.value("truncation", original->codomain().total_dim());
        if (!dims.empty()) {
            const FdCStarAlgebra a(parse_dims(dims[0]));
            const FdCStarAlgebra b(parse_dims(dims[1]));
            if (a != original->domain() || b != original->codomain())
                throw ParseError("--dims disagree with the algebras in the family file");
        }
        fam = natural_family_from_map(*original, trunc, tol);
    } else if (j.contains("builtin")) {
        if (dims.empty())
            throw ParseError("builtin families need --dims A B");
        const FdCStarAlgebra a(parse_dims(dims[0]));
        const FdCStarAlgebra b(parse_dims(dims[1]));
        const std::size_t trunc = j.value("truncation", b.total_dim());
        const std::uint64_t fam_seed = j.value("seed", 0);
        fam = builtin_family(j["builtin"].get<std::string>(), a, b, trunc, fam_seed);
    } else {
        throw ParseError("family file needs \"family_of\" or \"builtin\"");
    }

    if (fam->truncation < fam->target.total_dim())
        throw TruncationTooSmall("reconstruction needs truncation >= total_dim(B) = " +
                                 std::to_string(fam->target.total_dim()));

    // Probe naturality up front so a violation can ship its (h, g) pair.
    const NaturalityReport nat = check_naturality(*fam, probes, seed, tol);
    if (!nat.pass) {
        const NaturalityViolation& v = *nat.violation;
        std::printf("verdict: not natural (%s probe %zu -> %zu, residual %.3e)\n",
                    v.probe_kind.c_str(), v.m, v.n, v.residual);
        json w{{"verdict", "not-natural"},
               {"probe_kind", v.probe_kind},
               {"m", v.m},
               {"n", v.n},
               {"residual", v.residual}};
        if (v.h.has_value()) w["h"] = io::superop_to_json(*v.h);
        if (v.g.has_value()) w["g"] = io::superop_to_json(*v.g);
        std::cout << w.dump() << "\n";
        return kExitFalse;
    }

    try {
        const SuperOperator f = reconstruct_map_from_family(*fam, probes, seed, tol);
        std::printf("reconstruction verified against %zu probes\n", probes);
        if (original.has_value())
            std::printf("round-trip distance to the inducing map: %.3e\n",
                        sup_distance(f, *original));
        emit(io::superop_to_json(f), out_path);
        return kExitTrue;
    } catch (const NotNatural& e) {
        std::printf("verdict: not natural\n");
        std::cout << json{{"verdict", "not-natural"}, {"detail", e.what()},
                          {"residual", e.residual}}
                         .dump()
                  << "\n";
        return kExitFalse;
    } catch (const ReconstructionMismatch& e) {
        std::printf("verdict: not representable\n");
        std::cout << json{{"verdict", "reconstruction-mismatch"}, {"detail", e.what()},
                          {"residual", e.residual}}
                         .dump()
                  << "\n";
        return kExitFalse;
    }
}

int cmd_demo_density(const std::vector<std::string>& dims, std::uint64_t seed,
                     std::size_t trials) {
    if (dims.size() != 2) throw ParseError("demo-density needs --dims A B");
    const FdCStarAlgebra a(parse_dims(dims[0]));
    const FdCStarAlgebra b(parse_dims(dims[1]));
    if (a.total_dim() > 6 || b.total_dim() > 6)
        throw ParseError("demo-density is desk-scale: total dimensions must be <= 6");
    const std::string report = demo_density_report(a, b, seed, trials);
    std::cout << report;
    return report.find(" FAIL") == std::string::npos ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opalg: finite-dimensional operator algebras, CP maps and the density reconstruction"};
    app.require_subcommand(1);

    std::string map_path, second_path, out_path;
    std::vector<std::string> dims;
    double tol = 1e-9;
    double lemma_tol = 1e-10;
    std::size_t n_amplify = 1;
    std::size_t probes = 50;
    std::size_t trials = 20;
    unsigned budget = 32;
    std::uint64_t seed = 0;

    CLI::App* check_cp = app.add_subcommand("check-cp", "Complete positivity via the Choi spectrum");
    check_cp->add_option("map-file", map_path)->required();
    check_cp->add_option("--tol", tol, "tolerance band");

    CLI::App* check_pos = app.add_subcommand("check-positive", "Positivity semidecision");
    check_pos->add_option("map-file", map_path)->required();
    check_pos->add_option("--tol", tol);
    check_pos->add_option("--budget", budget, "random search restarts");
    check_pos->add_option("--seed", seed);

    CLI::App* choi = app.add_subcommand("choi", "Choi matrix of a map between matrix algebras");
    choi->add_option("map-file", map_path)->required();
    choi->add_option("--out", out_path, "output file (stdout when absent)");

    CLI::App* kraus = app.add_subcommand("kraus", "Kraus decomposition of a CP map");
    kraus->add_option("map-file", map_path)->required();
    kraus->add_option("--tol", tol);
    kraus->add_option("--out", out_path);

    CLI::App* amp = app.add_subcommand("amplify", "Entrywise amplification M_n(f)");
    amp->add_option("map-file", map_path)->required();
    amp->add_option("-n,--n", n_amplify, "amplification order")->required();
    amp->add_option("--out", out_path);

    CLI::App* lemma = app.add_subcommand("lemma-check", "Compression condition vs amplification");
    lemma->add_option("fn-file", map_path)->required();
    lemma->add_option("f1-file", second_path)->required();
    lemma->add_option("--tol", lemma_tol);

    CLI::App* rcone = app.add_subcommand("reconstruct-cone",
                                         "Positive map from a cone map on functionals");
    bool normalize = false;
    rcone->add_option("cone-file", map_path)->required();
    rcone->add_option("--out", out_path);
    rcone->add_option("--tol", tol);
    rcone->add_option("--seed", seed);
    rcone->add_flag("--normalize", normalize, "probe with trace-normalized states");

    CLI::App* rnat = app.add_subcommand("reconstruct-natural",
                                        "CP map from a natural family of hom-set functions");
    rnat->add_option("family-file", map_path)->required();
    rnat->add_option("--dims", dims, "block dims of A and B, e.g. --dims 2 1,1")->expected(2);
    rnat->add_option("--probes", probes);
    rnat->add_option("--seed", seed);
    rnat->add_option("--tol", tol);
    rnat->add_option("--out", out_path);

    CLI::App* demo = app.add_subcommand("demo-density", "Sample-reconstruct-compare demonstration");
    demo->add_option("--dims", dims, "block dims of A and B")->expected(2)->required();
    demo->add_option("--seed", seed);
    demo->add_option("--trials", trials);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (check_cp->parsed()) return cmd_check_cp(map_path, tol);
        if (check_pos->parsed()) return cmd_check_positive(map_path, tol, budget, seed);
        if (choi->parsed()) return cmd_choi(map_path, out_path);
        if (kraus->parsed()) return cmd_kraus(map_path, tol, out_path);
        if (amp->parsed()) return cmd_amplify(map_path, n_amplify, out_path);
        if (lemma->parsed()) return cmd_lemma_check(map_path, second_path, lemma_tol);
        if (rcone->parsed())
            return cmd_reconstruct_cone(map_path, out_path, tol, seed, normalize);
        if (rnat->parsed())
            return cmd_reconstruct_natural(map_path, dims, probes, seed, tol, out_path);
        if (demo->parsed()) return cmd_demo_density(dims, seed, trials);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitUsage;
    } catch (const TruncationTooSmall& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
