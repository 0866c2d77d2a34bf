#include <doctest.h>

#include "detmax/gen.hpp"
#include "detmax/linalg.hpp"
#include "detmax/oracles.hpp"
#include "detmax/rng.hpp"

using namespace detmax;

namespace {

Matrix from_rows(const std::vector<std::vector<long>>& rows) {
    Matrix m(static_cast<int>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows.size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = Rat(rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("index sets") {
    IndexSet s({3, 1, 2});
    CHECK(s.size() == 3);
    CHECK(s[0] == 1);
    CHECK(s.contains(2));
    CHECK(!s.contains(4));
    CHECK(s.shifted(1) == IndexSet({2, 3, 4}));
    CHECK_THROWS_AS(IndexSet({1, 1}), std::invalid_argument);
    CHECK(IndexSet::range(2, 4) == IndexSet({2, 3, 4}));
}

TEST_CASE("gram of the worked four-vector set") {
    GramMatrix a = gram(four_vectors_fixture());
    CHECK(a.psd == PsdProvenance::ConstructedFromVectors);
    Matrix expected = from_rows({{25, 10, 5, 15}, {10, 13, 5, 9}, {5, 5, 11, 7}, {15, 9, 7, 11}});
    CHECK(a.m == expected);

    // Standard basis gives the identity; a single vector gives its norm.
    RatVectorSet basis;
    basis.d = 3;
    basis.vectors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(gram(basis).m == Matrix::identity(3));

    RatVectorSet single;
    single.d = 2;
    single.vectors = {{1, 2}};
    CHECK(gram(single).m.at(0, 0) == Rat(5));
}

TEST_CASE("determinants of the worked example") {
    GramMatrix a = gram(four_vectors_fixture());
    CHECK(det(principal_submatrix(a.m, IndexSet({1, 2, 3}))) == Rat(2025));
    CHECK(det(principal_submatrix(a.m, IndexSet({1, 2, 4}))) == Rat(225));
    CHECK(det(principal_submatrix(a.m, IndexSet())) == Rat(1));
    CHECK(det(a) == det(a.m));
}

TEST_CASE("principal submatrix") {
    GramMatrix a = gram(four_vectors_fixture());
    Matrix sub = principal_submatrix(a.m, IndexSet({1, 2, 3}));
    CHECK(sub == from_rows({{25, 10, 5}, {10, 13, 5}, {5, 5, 11}}));
    CHECK(principal_submatrix(a.m, IndexSet()).order() == 0);
    CHECK(principal_submatrix(a.m, IndexSet::range(1, 4)) == a.m);
    CHECK_THROWS_AS(principal_submatrix(a.m, IndexSet({5})), std::out_of_range);
    CHECK_THROWS_AS(principal_submatrix(a.m, IndexSet({0})), std::out_of_range);
}

TEST_CASE("bareiss matches cofactor expansion") {
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
        int n = static_cast<int>(rng.range(1, 5));
        Matrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = Rat(rng.range(-9, 9), rng.range(1, 6));
        CHECK(det(m) == oracles::cofactor_det(m));
    }
}

TEST_CASE("determinant handles zero pivots") {
    Matrix m = from_rows({{0, 1, 2}, {1, 0, 3}, {4, 5, 0}});
    CHECK(det(m) == oracles::cofactor_det(m));
    Matrix singular = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}});
    CHECK(det(singular) == Rat(0));
}

TEST_CASE("volume squared equals the gram minor") {
    RatVectorSet v = four_vectors_fixture();
    CHECK(vol_squared(v, IndexSet({1, 2, 3})) == Rat(2025));
    CHECK(vol_squared(v, IndexSet()) == Rat(1));
    CHECK(vol_squared(v, IndexSet({3})) == Rat(11));  // squared norm of a singleton

    // A linearly dependent pair spans zero volume.
    RatVectorSet dep;
    dep.d = 2;
    dep.vectors = {{1, 2}, {2, 4}, {0, 1}};
    CHECK(vol_squared(dep, IndexSet({1, 2})) == Rat(0));

    Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        int d = static_cast<int>(rng.range(1, 6));
        int n = static_cast<int>(rng.range(1, 8));
        RatVectorSet rv = random_vectors(rng, d, n, false, false);
        GramMatrix g = gram(rv);
        std::vector<int> idx;
        for (int i = 1; i <= n; ++i)
            if (rng.coin()) idx.push_back(i);
        IndexSet s(idx);
        CHECK(vol_squared(rv, s) == det(principal_submatrix(g.m, s)));
    }
}

TEST_CASE("symmetrized graph shapes") {
    Matrix diag = from_rows({{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    CHECK(symmetrized_graph(diag).empty());

    // Arrowhead with a dense hub row: a star.
    Matrix star = from_rows({{1, 2, 3, 4}, {2, 1, 0, 0}, {3, 0, 1, 0}, {4, 0, 0, 1}});
    auto edges = symmetrized_graph(star);
    REQUIRE(edges.size() == 3);
    for (size_t i = 0; i < edges.size(); ++i) {
        CHECK(edges[i].first == 1);
        CHECK(edges[i].second == static_cast<int>(i) + 2);
    }

    // Tridiagonal with a nonzero band: a path.
    Matrix tri = from_rows({{1, 1, 0, 0}, {1, 1, 1, 0}, {0, 1, 1, 1}, {0, 0, 1, 1}});
    auto path = symmetrized_graph(tri);
    REQUIRE(path.size() == 3);
    for (size_t i = 0; i < path.size(); ++i) {
        CHECK(path[i].first == static_cast<int>(i) + 1);
        CHECK(path[i].second == static_cast<int>(i) + 2);
    }

    // An asymmetric nonzero still produces the edge.
    Matrix asym = from_rows({{1, 0}, {5, 1}});
    CHECK(symmetrized_graph(asym).size() == 1);
}

TEST_CASE("structure predicates") {
    CHECK(is_arrowhead(Matrix::identity(4)));
    CHECK(is_tridiagonal(Matrix::identity(4)));

    Matrix arrow = from_rows({{1, 2, 3}, {2, 4, 0}, {3, 0, 5}});
    CHECK(is_arrowhead(arrow));
    CHECK(!is_tridiagonal(from_rows({{1, 0, 7}, {0, 1, 0}, {7, 0, 1}})));

    Rng rng(9);
    Matrix dense(5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) dense.at(i, j) = Rat(rng.range(1, 9));
    CHECK(!is_arrowhead(dense));
    CHECK(!is_tridiagonal(dense));
}

TEST_CASE("arrowhead closed form") {
    // Hub absent: the minor is diagonal.
    Matrix a = from_rows({{7, 1, 1, 1}, {1, 2, 0, 0}, {1, 0, 3, 0}, {1, 0, 0, 5}});
    CHECK(arrowhead_det(a, IndexSet({1, 2, 3})) == Rat(30));

    // 2x2 arrowhead: ac - b^2.
    Matrix two = from_rows({{3, 2}, {2, 5}});
    CHECK(arrowhead_det(two, IndexSet({0, 1})) == Rat(11));

    CHECK(arrowhead_det(a, IndexSet()) == Rat(1));
    CHECK_THROWS_AS(arrowhead_det(a, IndexSet({4})), std::out_of_range);

    Matrix not_arrow = from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    CHECK_THROWS_AS(arrowhead_det(not_arrow, IndexSet({0, 1})), std::invalid_argument);

    // Zero diagonal away from the hub: falls back to the generic route.
    Matrix zdiag = from_rows({{2, 3, 1}, {3, 0, 0}, {1, 0, 4}});
    CHECK(arrowhead_det(zdiag, IndexSet({0, 1, 2})) ==
          det(principal_submatrix(zdiag, IndexSet({1, 2, 3}))));

    // Random agreement with the generic determinant.
    Rng rng(21);
    for (int t = 0; t < 300; ++t) {
        int order = static_cast<int>(rng.range(2, 7));
        Matrix m(order);
        for (int i = 0; i < order; ++i) {
            long v = rng.range(-9, 9);
            if (i >= 1 && v == 0) v = 2;
            m.at(i, i) = Rat(v, rng.range(1, 4));
        }
        for (int i = 1; i < order; ++i) {
            m.at(0, i) = Rat(rng.range(-9, 9), rng.range(1, 4));
            m.at(i, 0) = Rat(rng.range(-9, 9), rng.range(1, 4));
        }
        std::vector<int> idx;
        for (int i = 0; i < order; ++i)
            if (rng.coin()) idx.push_back(i);
        IndexSet s(idx);
        CHECK(arrowhead_det(m, s) == det(principal_submatrix(m, s.shifted(1))));
    }
}

TEST_CASE("determinant scaling identity") {
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        int n = static_cast<int>(rng.range(1, 5));
        Matrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = Rat(rng.range(-6, 6), rng.range(1, 4));
        Rat c(rng.range(-5, 5), rng.range(1, 3));
        Matrix scaled(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) scaled.at(i, j) = c * m.at(i, j);
        CHECK(det(scaled) == Rat::pow(c, n) * det(m));
    }
}

TEST_CASE("gram validation") {
    GramMatrix g;
    g.m = from_rows({{1, 2}, {3, 1}});
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.m = from_rows({{-1, 0}, {0, 1}});
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}
