// detmax-lab: exact-rational laboratory for determinant maximization,
// orthogonal-subset search, grid tiling / binary CSPs, and the reductions
// connecting them. Subcommands: gen, solve, reduce, verify.
//
// Exit codes: 0 success, 1 verification failures, 2 validation error,
// 3 resource-bound refusal.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "detmax/gen.hpp"
#include "detmax/verify.hpp"

namespace {

using namespace detmax;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << dump(j);
    } else {
        write_json_file(out_path, j);
    }
}

Rat parse_rat_flag(const std::string& s, const char* flag) {
    try {
        return Rat::parse(s);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(flag) + " expects a canonical rational like 3/4");
    }
}

unsigned long env_max_bits(unsigned long fallback) {
    const char* v = std::getenv("DETMAX_LAB_MAX_BITS");
    if (!v) return fallback;
    char* end = nullptr;
    unsigned long bits = std::strtoul(v, &end, 10);
    if (end == v || *end != '\0' || bits == 0) {
        throw std::invalid_argument("DETMAX_LAB_MAX_BITS must be a positive integer");
    }
    return bits;
}

struct SolveArgs {
    std::string alg;
    std::string file;
    std::string out;
    int k = 0;
    std::string eps = "";
    unsigned long long max_subsets = SolverLimits{}.max_subsets;
};

int run_solve(const SolveArgs& a) {
    Json in = read_json_file(a.file);
    std::string type = instance_type(in);
    SolverLimits lim;
    lim.max_subsets = a.max_subsets;
    lim.max_assignments = a.max_subsets;

    Json result;
    if (a.alg == "brute") {
        GramMatrix g = type == "gram"    ? gram_from_json(in)
                       : type == "vectors" ? gram(vectors_from_json(in))
                                           : throw std::invalid_argument("brute expects a gram or vectors file");
        DetMaxSolution sol = maxdet_bruteforce(g, a.k, lim);
        result = Json{{"subset", sol.subset.values()}, {"value", sol.value.str()}};
    } else if (a.alg == "greedy") {
        if (type != "vectors") throw std::invalid_argument("greedy expects a vectors file");
        DetMaxSolution sol = maxdet_greedy(vectors_from_json(in), a.k);
        result = Json{{"subset", sol.subset.values()}, {"value", sol.value.str()}};
    } else if (a.alg == "additive") {
        if (type != "vectors") throw std::invalid_argument("additive expects a vectors file");
        if (a.eps.empty()) throw std::invalid_argument("additive requires --eps");
        DetMaxSolution sol =
            maxdet_additive_approx(vectors_from_json(in), a.k, parse_rat_flag(a.eps, "--eps"), lim);
        result = Json{{"subset", sol.subset.values()}, {"value", sol.value.str()}};
    } else if (a.alg == "ortho" || a.alg == "ortho-nonneg") {
        if (type != "vectors") throw std::invalid_argument("orthogonal search expects a vectors file");
        RatVectorSet v = vectors_from_json(in);
        auto found = a.alg == "ortho" ? find_orthogonal_set(v, a.k) : find_orthogonal_set_nonneg(v, a.k);
        result = found ? Json{{"subset", found->values()}, {"found", true}}
                       : Json{{"found", false}};
    } else {
        throw std::invalid_argument("unknown algorithm \"" + a.alg + "\"");
    }
    result["config"] = Json{{"alg", a.alg}, {"k", a.k}, {"input", a.file}};
    if (!a.eps.empty()) result["config"]["eps"] = a.eps;
    emit(result, a.out);
    return kExitOk;
}

struct ReduceArgs {
    std::string from, to, file, out;
    unsigned long max_bits = ReductionLimits{}.max_precision_bits;
};

int run_reduce(const ReduceArgs& a) {
    Json in = read_json_file(a.file);
    std::string type = instance_type(in);
    ReductionLimits lim;
    lim.max_precision_bits = env_max_bits(a.max_bits);

    Json result;
    if (a.from == "ksum" && a.to == "arrowhead") {
        if (type != "ksum") throw std::invalid_argument("expected a ksum file");
        result = to_json(ksum_to_arrowhead(ksum_from_json(in), lim));
    } else if (a.from == "gridtiling" && a.to == "orthovectors") {
        if (type != "gridtiling") throw std::invalid_argument("expected a gridtiling file");
        result = to_json(gridtiling_to_orthovectors(gridtiling_from_json(in)));
    } else if (a.from == "gridtiling" && a.to == "detmax") {
        if (type != "gridtiling") throw std::invalid_argument("expected a gridtiling file");
        result = to_json(gridtiling_to_detmax(gridtiling_from_json(in), lim));
    } else if (a.from == "bcsp" && a.to == "gridtiling") {
        if (type != "bcsp") throw std::invalid_argument("expected a bcsp file");
        result = to_json(bcsp_to_gridtiling(bcsp_from_json(in)));
    } else {
        throw std::invalid_argument("unsupported reduction " + a.from + " -> " + a.to);
    }
    result["config"] = Json{{"from", a.from}, {"to", a.to}, {"input", a.file}};
    emit(result, a.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-rational determinant maximization laboratory"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    std::string gen_kind, gen_fixture, gen_out;
    GenParams gp;
    uint64_t gen_seed = 0;
    gen->add_option("kind", gen_kind,
                    "ksum | gridtiling | gridtiling-planted | bcsp | bcsp-planted | vectors | gram")
        ->required();
    gen->add_option("--n", gp.n, "ground-set / alphabet size");
    gen->add_option("--k", gp.k, "solution size / grid side / variable count");
    gen->add_option("--d", gp.d, "vector dimension");
    gen->add_option("--max-val", gp.max_val, "largest integer value (ksum)");
    gen->add_option("--cell-size", gp.cell_size, "pairs per grid cell (upper bound)");
    gen->add_option("--density", gp.density, "percent of variable pairs constrained (bcsp)");
    gen->add_option("--pairs", gp.pairs_per_constraint, "pairs per constraint (upper bound)");
    gen->add_flag("--unit-box", gp.unit_box, "vector entries in [-1,1]");
    gen->add_flag("--nonneg", gp.nonneg, "nonnegative vector entries");
    gen->add_option("--fixture", gp.fixture, "named fixture: four-vectors | grid3x4");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("-o,--out", gen_out, "output file (stdout when absent)");

    // --- solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "run a solver on an instance file");
    SolveArgs sa;
    std::string solve_eps;
    solve->add_option("--alg", sa.alg, "brute | greedy | additive | ortho | ortho-nonneg")->required();
    solve->add_option("--k", sa.k, "solution size")->required();
    solve->add_option("--eps", sa.eps, "additive tolerance as a rational, e.g. 1/4");
    solve->add_option("--max-subsets", sa.max_subsets, "resource bound on enumerated subsets");
    solve->add_option("file", sa.file, "instance file")->required();
    solve->add_option("-o,--out", sa.out, "output file (stdout when absent)");

    // --- reduce ------------------------------------------------------------
    auto* reduce = app.add_subcommand("reduce", "run a reduction on an instance file");
    ReduceArgs ra;
    reduce->add_option("--from", ra.from, "ksum | gridtiling | bcsp")->required();
    reduce->add_option("--to", ra.to, "arrowhead | orthovectors | detmax | gridtiling")->required();
    reduce->add_option("--max-bits", ra.max_bits, "precision guard in bits (env DETMAX_LAB_MAX_BITS overrides)");
    reduce->add_option("file", ra.file, "instance file")->required();
    reduce->add_option("-o,--out", ra.out, "output file (stdout when absent)");

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite, verify_out;
    long trials = 0;
    uint64_t vseed = 1;
    verify->add_option("suite", suite, "suite name, or \"list\" to enumerate")->required();
    verify->add_option("--trials", trials, "trial count (0 = suite default)");
    verify->add_option("--seed", vseed, "randomness seed");
    verify->add_option("-o,--out", verify_out, "report file (stdout when absent)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            Json j;
            if (gen_kind == "ksum") {
                j = gen_ksum(gp, gen_seed, false);
            } else if (gen_kind == "ksum-planted") {
                j = gen_ksum(gp, gen_seed, true);
            } else if (gen_kind == "gridtiling") {
                j = gen_gridtiling(gp, gen_seed, false);
            } else if (gen_kind == "gridtiling-planted") {
                j = gen_gridtiling(gp, gen_seed, true);
            } else if (gen_kind == "bcsp") {
                j = gen_bcsp(gp, gen_seed, false);
            } else if (gen_kind == "bcsp-planted") {
                j = gen_bcsp(gp, gen_seed, true);
            } else if (gen_kind == "vectors") {
                j = gen_vectors(gp, gen_seed);
            } else if (gen_kind == "gram") {
                j = gen_gram(gp, gen_seed);
            } else {
                throw std::invalid_argument("unknown generator kind \"" + gen_kind + "\"");
            }
            emit(j, gen_out);
            return kExitOk;
        }
        if (*solve) return run_solve(sa);
        if (*reduce) return run_reduce(ra);
        if (*verify) {
            if (suite == "list") {
                for (const auto& name : suite_names()) std::cout << name << "\n";
                return kExitOk;
            }
            VerificationReport rep = run_suite(suite, trials, vseed);
            emit(to_json(rep), verify_out);
            if (!verify_out.empty()) {
                std::cout << rep.suite << ": " << rep.trials << " trials, " << rep.failures.size()
                          << " failures\n";
            }
            return rep.ok() ? kExitOk : kExitVerifyFailed;
        }
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
