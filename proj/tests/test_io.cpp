#include <doctest.h>

#include "detmax/gen.hpp"
#include "detmax/io.hpp"
#include "detmax/rng.hpp"

using namespace detmax;

TEST_CASE("vectors round trip byte-identically") {
    Rng rng(2);
    for (int t = 0; t < 30; ++t) {
        RatVectorSet v = random_vectors(rng, static_cast<int>(rng.range(1, 5)),
                                        static_cast<int>(rng.range(1, 6)), false, false);
        Json j = to_json(v);
        RatVectorSet back = vectors_from_json(j);
        CHECK(dump(to_json(back)) == dump(j));
    }
}

TEST_CASE("gram round trip and validation") {
    Rng rng(3);
    GramMatrix g = gram(random_vectors(rng, 3, 4, false, false));
    Json j = to_json(g);
    CHECK(j["type"] == "gram");
    CHECK(j["psd"] == "constructed");
    GramMatrix back = gram_from_json(j);
    CHECK(back.m == g.m);
    CHECK(back.psd == PsdProvenance::ConstructedFromVectors);

    Json bad = j;
    bad["entries"][0][1] = "7/5";  // breaks symmetry
    CHECK_THROWS_AS(gram_from_json(bad), std::invalid_argument);

    Json badpsd = j;
    badpsd["psd"] = "maybe";
    CHECK_THROWS_AS(gram_from_json(badpsd), std::invalid_argument);
}

TEST_CASE("rationals reject non-canonical text") {
    CHECK(rat_from_json(Json("3/4")) == Rat(3, 4));
    CHECK_THROWS_AS(rat_from_json(Json("6/8")), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_json(Json(5)), std::invalid_argument);
}

TEST_CASE("gridtiling round trip") {
    GridTilingInstance inst = grid3x4_fixture();
    Json j = to_json(inst);
    GridTilingInstance back = gridtiling_from_json(j);
    CHECK(dump(to_json(back)) == dump(j));
    CHECK(back.cell(1, 1) == inst.cell(1, 1));

    Json bad = j;
    bad["cells"][0][0] = Json::array();  // empty cell
    CHECK_THROWS_AS(gridtiling_from_json(bad), std::invalid_argument);
}

TEST_CASE("bcsp round trip normalizes orientation") {
    Json j{{"type", "bcsp"},
           {"k", 3},
           {"n", 2},
           {"constraints", Json::array({Json{{"i", 2}, {"j", 1}, {"pairs", Json::array({Json::array({1, 2})})}}})}};
    BcspInstance inst = bcsp_from_json(j);
    REQUIRE(inst.constraint(1, 2) != nullptr);
    CHECK(*inst.constraint(1, 2) == std::vector<IntPair>{{2, 1}});

    Json dup = j;
    dup["constraints"].push_back(Json{{"i", 1}, {"j", 2}, {"pairs", Json::array({Json::array({1, 1})})}});
    CHECK_THROWS_AS(bcsp_from_json(dup), std::invalid_argument);

    Json self = j;
    self["constraints"][0]["j"] = 2;
    self["constraints"][0]["i"] = 2;
    CHECK_THROWS_AS(bcsp_from_json(self), std::invalid_argument);
}

TEST_CASE("ksum round trip enforces the instance invariants") {
    KSumInstance inst = ksum_normalize({1, 2, 3}, 3, 2);
    Json j = to_json(inst);
    KSumInstance back = ksum_from_json(j);
    CHECK(back.t == inst.t);
    CHECK(back.g == inst.g);

    Json bad = j;
    bad["t"] = "1";  // target must lie strictly inside (0,1)
    CHECK_THROWS_AS(ksum_from_json(bad), std::invalid_argument);
    Json badsum = j;
    badsum["x"][0] = "1/7";
    CHECK_THROWS_AS(ksum_from_json(badsum), std::invalid_argument);
}

TEST_CASE("reduction outputs embed their parameters") {
    Json j = to_json(ksum_to_arrowhead(ksum_normalize({1, 2, 3}, 3, 2)));
    CHECK(j["type"] == "gram");
    REQUIRE(j.contains("meta"));
    for (const char* key : {"alpha", "beta", "gamma", "delta", "epsilon", "theta"}) {
        CHECK(j["meta"].contains(key));
        CHECK_NOTHROW(Rat::parse(j["meta"][key].get<std::string>()));
    }
    CHECK(j["meta"]["K"] == 3);

    Json o = to_json(gridtiling_to_orthovectors(grid3x4_fixture()));
    CHECK(o["type"] == "vectors");
    CHECK(o["meta"]["K"] == 9);
    CHECK(o["meta"]["labels"].size() == 18);

    Json g = to_json(gridtiling_to_detmax(grid3x4_fixture()));
    CHECK(g["type"] == "gram");
    CHECK(g["meta"]["ell"] == 4);
}

TEST_CASE("json text form is stable") {
    // Keys are emitted sorted, so equal values give equal bytes.
    Json a{{"zeta", 1}, {"alpha", 2}};
    Json b;
    b["alpha"] = 2;
    b["zeta"] = 1;
    CHECK(dump(a) == dump(b));
}
