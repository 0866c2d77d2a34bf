#include <doctest.h>

#include "detmax/gen.hpp"
#include "detmax/oracles.hpp"
#include "detmax/rng.hpp"
#include "detmax/solvers.hpp"

using namespace detmax;

TEST_CASE("brute force on the worked example") {
    GramMatrix a = gram(four_vectors_fixture());
    DetMaxSolution best = maxdet_bruteforce(a, 3);
    CHECK(best.subset == IndexSet({1, 2, 3}));
    CHECK(best.value == Rat(2025));

    // k = n returns everything; k = 1 the largest diagonal entry.
    CHECK(maxdet_bruteforce(a, 4).subset == IndexSet::range(1, 4));
    CHECK(maxdet_bruteforce(a, 4).value == det(a));
    CHECK(maxdet_bruteforce(a, 1).subset == IndexSet({1}));
    CHECK(maxdet_bruteforce(a, 1).value == Rat(25));

    CHECK_THROWS_AS(maxdet_bruteforce(a, 0), std::invalid_argument);
    CHECK_THROWS_AS(maxdet_bruteforce(a, 5), std::invalid_argument);
}

TEST_CASE("brute force lexicographic tie break") {
    GramMatrix g;
    g.m = Matrix::identity(4);
    DetMaxSolution best = maxdet_bruteforce(g, 2);
    CHECK(best.subset == IndexSet({1, 2}));  // every pair ties at 1
    CHECK(best.value == Rat(1));
}

TEST_CASE("brute force refuses infeasible enumerations") {
    GramMatrix g;
    g.m = Matrix::identity(41);
    CHECK_THROWS_AS(maxdet_bruteforce(g, 20), resource_error);
}

TEST_CASE("brute force dominates every enumerated subset") {
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        int d = static_cast<int>(rng.range(1, 4));
        int n = static_cast<int>(rng.range(2, 12));
        int k = static_cast<int>(rng.range(1, std::min(4, n)));
        GramMatrix a = gram(random_vectors(rng, d, n, false, false));
        DetMaxSolution best = maxdet_bruteforce(a, k);
        for_each_subset(n, k, [&](const std::vector<int>& s) {
            CHECK(best.value >= det(principal_submatrix(a.m, IndexSet(s))));
        });
        CHECK(best.value == det(principal_submatrix(a.m, best.subset)));
    }
}

TEST_CASE("greedy on orthogonal input is exact") {
    RatVectorSet v;
    v.d = 3;
    v.vectors = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    DetMaxSolution sol = maxdet_greedy(v, 2);
    CHECK(sol.value == Rat(16));
    CHECK(sol.value == maxdet_bruteforce(gram(v), 2).value);

    // k = 1 picks the max-norm vector (smallest index on ties).
    RatVectorSet w;
    w.d = 2;
    w.vectors = {{1, 0}, {3, 4}, {0, 5}};
    DetMaxSolution one = maxdet_greedy(w, 1);
    CHECK(one.subset == IndexSet({2}));
    CHECK(one.value == Rat(25));
}

TEST_CASE("greedy respects the factorial-squared guarantee") {
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        int d = static_cast<int>(rng.range(1, 4));
        int n = static_cast<int>(rng.range(1, 8));
        int k = static_cast<int>(rng.range(1, std::min(3, n)));
        RatVectorSet v = random_vectors(rng, d, n, false, false);
        DetMaxSolution greedy = maxdet_greedy(v, k);
        Rat kfact(1);
        for (int i = 2; i <= k; ++i) kfact *= Rat(i);
        CHECK(greedy.value * kfact * kfact >= maxdet_bruteforce(gram(v), k).value);
        CHECK(greedy.value == det(principal_submatrix(gram(v).m, greedy.subset)));
    }
}

TEST_CASE("additive approx on the standard basis is exact") {
    RatVectorSet v;
    v.d = 3;
    v.vectors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const Rat& eps : {Rat(1), Rat(1, 2)}) {
        DetMaxSolution sol = maxdet_additive_approx(v, 3, eps);
        CHECK(sol.value == Rat(1));
    }
}

TEST_CASE("additive approx guarantee on random instances") {
    Rng rng(29);
    const Rat eps_choices[3] = {Rat(1), Rat(1, 2), Rat(1, 4)};
    for (int t = 0; t < 60; ++t) {
        int d = static_cast<int>(rng.range(1, 3));
        int k = static_cast<int>(rng.range(1, d));
        int n = static_cast<int>(rng.range(k, 6));
        RatVectorSet v = random_vectors(rng, d, n, true, false);
        Rat eps = eps_choices[t % 3];
        DetMaxSolution sol = maxdet_additive_approx(v, k, eps);
        Rat opt = maxdet_bruteforce(gram(v), k).value;
        CHECK(sol.value >= opt - eps);
        CHECK(sol.subset.size() == k);
    }
}

TEST_CASE("additive approx is vacuous for huge eps but still well formed") {
    Rng rng(31);
    RatVectorSet v = random_vectors(rng, 2, 6, true, false);
    Rat opt = maxdet_bruteforce(gram(v), 2).value;
    DetMaxSolution sol = maxdet_additive_approx(v, 2, opt + Rat(10));
    CHECK(sol.subset.size() == 2);
    CHECK(sol.value >= opt - (opt + Rat(10)));
}

TEST_CASE("additive approx degenerate rounding") {
    // All vectors collapse to one rounded point: lex-smallest subset.
    RatVectorSet v;
    v.d = 2;
    Rat delta = additive_grid_step(2, Rat(1));
    Rat tiny = delta / Rat(10);
    v.vectors = {{tiny, tiny}, {tiny / 2, tiny / 2}, {-(tiny / 3), tiny / 3}};
    DetMaxSolution sol = maxdet_additive_approx(v, 2, Rat(1));
    CHECK(sol.subset == IndexSet({1, 2}));
    GramMatrix g = gram(v);
    CHECK(sol.value == det(principal_submatrix(g.m, sol.subset)));
}

TEST_CASE("additive approx input validation") {
    RatVectorSet v;
    v.d = 2;
    v.vectors = {{2, 0}, {0, 1}};
    CHECK_THROWS_AS(maxdet_additive_approx(v, 1, Rat(1, 2)), std::invalid_argument);  // entry out of box
    RatVectorSet ok;
    ok.d = 1;
    ok.vectors = {{1}, {0}};
    CHECK_THROWS_AS(maxdet_additive_approx(ok, 2, Rat(1, 2)), std::invalid_argument);  // k > d
}

TEST_CASE("grid rounding details") {
    Rat delta(1, 4);
    CHECK(round_to_grid(Rat(3, 10), delta) == Rat(1, 4));
    CHECK(round_to_grid(Rat(-3, 10), delta) == Rat(-1, 4));
    // Ties round toward -infinity.
    CHECK(round_to_grid(Rat(1, 8), delta) == Rat(0));
    CHECK(round_to_grid(Rat(-1, 8), delta) == Rat(-1, 4));
    CHECK(round_to_grid(Rat(1), delta) == Rat(1));

    // Grid step is the reciprocal of an integer.
    for (int d = 1; d <= 3; ++d) {
        for (const Rat& eps : {Rat(1), Rat(1, 2), Rat(2, 3), Rat(5)}) {
            Rat step = additive_grid_step(d, eps);
            CHECK(step.num() == 1);
        }
    }
}

TEST_CASE("orthogonal set search") {
    RatVectorSet basis;
    basis.d = 3;
    basis.vectors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto s = find_orthogonal_set(basis, 3);
    REQUIRE(s.has_value());
    CHECK(*s == IndexSet({1, 2, 3}));

    RatVectorSet same;
    same.d = 2;
    same.vectors = {{1, 1}, {1, 1}};
    CHECK(!find_orthogonal_set(same, 2).has_value());

    // Lex-smallest witness.
    RatVectorSet mix;
    mix.d = 2;
    mix.vectors = {{1, 0}, {1, 1}, {0, 1}};
    auto w = find_orthogonal_set(mix, 2);
    REQUIRE(w.has_value());
    CHECK(*w == IndexSet({1, 3}));
}

TEST_CASE("nonnegative orthogonal search") {
    RatVectorSet v;
    v.d = 4;
    v.vectors = {{1, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 3, 0}, {0, 0, 0, 4}};
    auto s = find_orthogonal_set_nonneg(v, 4);
    REQUIRE(s.has_value());
    CHECK(s->size() == 4);

    CHECK_THROWS_AS(find_orthogonal_set_nonneg(v, 5), std::invalid_argument);  // k > n
    RatVectorSet few;
    few.d = 2;
    few.vectors = {{1, 0}, {0, 1}, {1, 1}};
    CHECK(!find_orthogonal_set_nonneg(few, 3).has_value());  // k > d: always none

    RatVectorSet neg;
    neg.d = 2;
    neg.vectors = {{1, -1}};
    CHECK_THROWS_AS(find_orthogonal_set_nonneg(neg, 1), std::invalid_argument);

    // Agreement with the generic search on its domain.
    Rng rng(37);
    for (int t = 0; t < 150; ++t) {
        int d = static_cast<int>(rng.range(1, 6));
        int n = static_cast<int>(rng.range(1, 8));
        int k = static_cast<int>(rng.range(1, std::max(1, std::min(d, n))));
        RatVectorSet rv = random_vectors(rng, d, n, false, true);
        auto generic = find_orthogonal_set(rv, k);
        auto packed = find_orthogonal_set_nonneg(rv, k);
        CHECK(generic.has_value() == packed.has_value());
    }
}

TEST_CASE("zero vectors count as mutually orthogonal") {
    RatVectorSet v;
    v.d = 2;
    v.vectors = {{0, 0}, {1, 1}, {0, 0}};
    auto generic = find_orthogonal_set(v, 2);
    auto packed = find_orthogonal_set_nonneg(v, 2);
    REQUIRE(generic.has_value());
    REQUIRE(packed.has_value());
}

TEST_CASE("equal-norm determinant cap characterizes orthogonality") {
    // All vectors share squared norm 25; the max 2-minor hits 625 exactly
    // when an orthogonal pair exists.
    RatVectorSet with;
    with.d = 2;
    with.vectors = {{3, 4}, {-4, 3}, {5, 0}};
    CHECK(maxdet_bruteforce(gram(with), 2).value == Rat(625));
    CHECK(find_orthogonal_set(with, 2).has_value());

    RatVectorSet without;
    without.d = 2;
    without.vectors = {{3, 4}, {4, 3}, {5, 0}};
    CHECK(maxdet_bruteforce(gram(without), 2).value < Rat(625));
    CHECK(!find_orthogonal_set(without, 2).has_value());
}
