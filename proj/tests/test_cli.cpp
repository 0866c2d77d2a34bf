#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "detmax/io.hpp"

using detmax::Json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp_path(const char* suffix) {
    static int counter = 0;
    return "/tmp/detmax_cli_" + std::to_string(getpid()) + "_" + std::to_string(counter++) + suffix;
}

RunResult run(const std::string& args) {
    std::string out_path = tmp_path(".out");
    std::string cmd = std::string(DETMAX_LAB_BIN) + " " + args + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    std::remove(out_path.c_str());
    return r;
}

std::string tmp_json() { return tmp_path(".json"); }

}  // namespace

TEST_CASE("gen is deterministic per seed") {
    std::string a = tmp_json(), b = tmp_json(), c = tmp_json();
    CHECK(run("gen gridtiling --k 3 --n 3 --cell-size 2 --seed 5 -o " + a).exit_code == 0);
    CHECK(run("gen gridtiling --k 3 --n 3 --cell-size 2 --seed 5 -o " + b).exit_code == 0);
    CHECK(run("gen gridtiling --k 3 --n 3 --cell-size 2 --seed 6 -o " + c).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
    std::remove(a.c_str());
    std::remove(b.c_str());
    std::remove(c.c_str());
}

TEST_CASE("planted generators embed a witness") {
    std::string f = tmp_json();
    REQUIRE(run("gen gridtiling-planted --k 3 --n 4 --cell-size 2 --seed 7 -o " + f).exit_code == 0);
    Json j = detmax::read_json_file(f);
    CHECK(j.contains("witness"));
    // Witness re-validates: every entry is inside its cell and fully consistent.
    auto inst = detmax::gridtiling_from_json(j);
    auto sigma = detmax::assignment_from_json(j["witness"], inst.k);
    CHECK(detmax::consistency(inst, sigma) == 2 * inst.k * inst.k);
    std::remove(f.c_str());

    std::string kf = tmp_json();
    REQUIRE(run("gen ksum-planted --n 4 --k 2 --seed 1 -o " + kf).exit_code == 0);
    Json kj = detmax::read_json_file(kf);
    CHECK(kj.contains("witness"));
    auto ks = detmax::ksum_from_json(kj);
    detmax::Rat sum;
    for (const auto& idx : kj["witness"]) sum += ks.x[idx.get<size_t>() - 1];
    CHECK(sum == ks.t);
    std::remove(kf.c_str());
}

TEST_CASE("gen ksum emits a valid normalized instance") {
    std::string f = tmp_json();
    REQUIRE(run("gen ksum --n 4 --k 2 --seed 1 -o " + f).exit_code == 0);
    auto inst = detmax::ksum_from_json(detmax::read_json_file(f));  // validates invariants
    CHECK(inst.n() == 4);
    CHECK(inst.k == 2);
    std::remove(f.c_str());
}

TEST_CASE("solve additive via eps flag") {
    std::string f = tmp_json(), out = tmp_json();
    REQUIRE(run("gen vectors --d 2 --n 5 --unit-box --seed 9 -o " + f).exit_code == 0);
    CHECK(run("solve --alg additive --k 2 --eps 1/4 " + f + " -o " + out).exit_code == 0);
    Json j = detmax::read_json_file(out);
    CHECK(j["subset"].size() == 2);
    CHECK(run("solve --alg additive --k 2 " + f).exit_code == 2);  // missing --eps
    std::remove(f.c_str());
    std::remove(out.c_str());
}

TEST_CASE("solve brute on the worked fixture") {
    std::string f = tmp_json(), out = tmp_json();
    REQUIRE(run("gen vectors --fixture four-vectors -o " + f).exit_code == 0);
    RunResult r = run("solve --alg brute --k 3 " + f + " -o " + out);
    CHECK(r.exit_code == 0);
    Json j = detmax::read_json_file(out);
    CHECK(j["subset"] == Json::array({1, 2, 3}));
    CHECK(j["value"] == "2025");

    // Determinism: byte-identical reruns.
    std::string out2 = tmp_json();
    run("solve --alg brute --k 3 " + f + " -o " + out2);
    CHECK(slurp(out) == slurp(out2));

    std::remove(f.c_str());
    std::remove(out.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("reduce and solve the orthogonality pipeline") {
    std::string grid = tmp_json(), vecs = tmp_json(), sol = tmp_json();
    REQUIRE(run("gen gridtiling --fixture grid3x4 -o " + grid).exit_code == 0);
    REQUIRE(run("reduce --from gridtiling --to orthovectors " + grid + " -o " + vecs).exit_code == 0);
    RunResult r = run("solve --alg ortho --k 9 " + vecs + " -o " + sol);
    CHECK(r.exit_code == 0);
    Json j = detmax::read_json_file(sol);
    CHECK(j["found"] == true);
    CHECK(j["subset"].size() == 9);
    std::remove(grid.c_str());
    std::remove(vecs.c_str());
    std::remove(sol.c_str());
}

TEST_CASE("bcsp reduces to a perfectly tileable grid when satisfiable") {
    // Proper-coloring constraints on a triangle, alphabet of three values.
    std::string bcsp = tmp_json(), grid = tmp_json();
    {
        Json pairs = Json::array();
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b)
                if (a != b) pairs.push_back(Json::array({a, b}));
        Json j{{"type", "bcsp"}, {"k", 3}, {"n", 3}, {"constraints", Json::array()}};
        for (auto [i, jj] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
            j["constraints"].push_back(Json{{"i", i}, {"j", jj}, {"pairs", pairs}});
        }
        detmax::write_json_file(bcsp, j);
    }
    REQUIRE(run("reduce --from bcsp --to gridtiling " + bcsp + " -o " + grid).exit_code == 0);
    auto inst = detmax::gridtiling_from_json(detmax::read_json_file(grid));
    CHECK(detmax::gt_bruteforce(inst).opt == 2 * inst.k * inst.k);
    std::remove(bcsp.c_str());
    std::remove(grid.c_str());
}

TEST_CASE("gridtiling reduces to a unit-diagonal gram file") {
    std::string grid = tmp_json(), gram = tmp_json();
    REQUIRE(run("gen gridtiling --fixture grid3x4 -o " + grid).exit_code == 0);
    REQUIRE(run("reduce --from gridtiling --to detmax " + grid + " -o " + gram).exit_code == 0);
    Json j = detmax::read_json_file(gram);
    CHECK(j["meta"]["K"] == 9);
    auto g = detmax::gram_from_json(j);
    for (int i = 0; i < g.order(); ++i) CHECK(g.m.at(i, i) == detmax::Rat(1));
    std::remove(grid.c_str());
    std::remove(gram.c_str());
}

TEST_CASE("exit codes distinguish validation from resource refusal") {
    // Malformed JSON: validation error (2).
    std::string bad = tmp_json();
    {
        std::ofstream out(bad);
        out << "{ not json";
    }
    CHECK(run("solve --alg brute --k 2 " + bad).exit_code == 2);
    std::remove(bad.c_str());

    // Unknown algorithm: validation error (2).
    std::string f = tmp_json();
    run("gen vectors --d 2 --n 3 --seed 1 -o " + f);
    CHECK(run("solve --alg magic --k 2 " + f).exit_code == 2);

    // Oversized enumeration: resource refusal (3).
    std::string big = tmp_json();
    run("gen gram --d 4 --n 44 --seed 1 -o " + big);
    CHECK(run("solve --alg brute --k 22 " + big).exit_code == 3);
    std::remove(big.c_str());

    // Invariant violation on load: validation error (2).
    std::string ks = tmp_json();
    {
        std::ofstream out(ks);
        out << R"({"type":"ksum","k":1,"x":["1/2","1/3"],"t":"1/2","g":"1/6"})";
    }
    CHECK(run("solve --alg brute --k 1 " + ks).exit_code == 2);
    std::remove(ks.c_str());
    std::remove(f.c_str());
}

TEST_CASE("precision guard env var forces a resource refusal") {
    std::string ks = tmp_json();
    REQUIRE(run("gen ksum --n 4 --k 2 --seed 2 -o " + ks).exit_code == 0);
    std::string out_path = tmp_path(".out");
    std::string cmd = "DETMAX_LAB_MAX_BITS=8 " + std::string(DETMAX_LAB_BIN) +
                      " reduce --from ksum --to arrowhead " + ks + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 3);
    std::remove(ks.c_str());
    std::remove(out_path.c_str());
}

TEST_CASE("verify suite exit codes and reports") {
    RunResult ok = run("verify golden-vectors");
    CHECK(ok.exit_code == 0);
    Json rep = Json::parse(ok.out);
    CHECK(rep["suite"] == "golden-vectors");
    CHECK(rep["failures"].empty());

    CHECK(run("verify no-such-suite").exit_code == 2);

    RunResult listed = run("verify list");
    CHECK(listed.exit_code == 0);
    CHECK(listed.out.find("gadget-identities") != std::string::npos);
}

TEST_CASE("ksum reduction pipeline from the command line") {
    std::string ks = tmp_json(), arrow = tmp_json(), sol = tmp_json();
    REQUIRE(run("gen ksum-planted --n 4 --k 2 --max-val 6 --seed 3 -o " + ks).exit_code == 0);
    REQUIRE(run("reduce --from ksum --to arrowhead " + ks + " -o " + arrow).exit_code == 0);
    Json aj = detmax::read_json_file(arrow);
    REQUIRE(aj.contains("meta"));
    detmax::Rat theta = detmax::Rat::parse(aj["meta"]["theta"].get<std::string>());

    RunResult r = run("solve --alg brute --k 3 " + arrow + " -o " + sol);
    CHECK(r.exit_code == 0);
    detmax::Rat value = detmax::Rat::parse(detmax::read_json_file(sol)["value"].get<std::string>());
    CHECK(value >= theta);  // planted instances are yes-instances
    std::remove(ks.c_str());
    std::remove(arrow.c_str());
    std::remove(sol.c_str());
}
