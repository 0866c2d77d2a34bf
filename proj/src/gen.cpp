#include "detmax/gen.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace detmax {

RatVectorSet four_vectors_fixture() {
    RatVectorSet v;
    v.d = 3;
    v.vectors = {
        {Rat(5), Rat(0), Rat(0)},
        {Rat(2), Rat(3), Rat(0)},
        {Rat(1), Rat(1), Rat(3)},
        {Rat(3), Rat(1), Rat(1)},
    };
    return v;
}

GridTilingInstance grid3x4_fixture() {
    GridTilingInstance inst;
    inst.k = 3;
    inst.n = 4;
    auto cell = [](std::vector<IntPair> p) { return p; };
    // Rows j = 1..3, columns i = 1..3.
    inst.cells = {
        {cell({{1, 1}, {3, 2}}), cell({{1, 2}, {2, 2}}), cell({{1, 2}, {4, 2}})},
        {cell({{3, 4}, {4, 3}}), cell({{1, 4}, {3, 1}}), cell({{2, 1}, {4, 4}})},
        {cell({{3, 2}, {4, 1}}), cell({{1, 2}, {1, 3}}), cell({{3, 3}, {4, 2}})},
    };
    inst.validate();
    return inst;
}

GtAssignment grid3x4_solution() {
    GtAssignment a = GtAssignment::empty(3);
    a.at(1, 1) = {3, 2};
    a.at(2, 1) = {1, 2};
    a.at(3, 1) = {4, 2};
    a.at(1, 2) = {3, 4};
    a.at(2, 2) = {1, 4};
    a.at(3, 2) = {4, 4};
    a.at(1, 3) = {3, 2};
    a.at(2, 3) = {1, 2};
    a.at(3, 3) = {4, 2};
    return a;
}

RatVectorSet random_vectors(Rng& rng, int d, int n, bool unit_box, bool nonneg) {
    RatVectorSet v;
    v.d = d;
    v.vectors.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        RatVec vec(static_cast<size_t>(d));
        for (int e = 0; e < d; ++e) {
            long den = rng.range(1, 6);
            long num;
            if (unit_box) {
                num = rng.range(nonneg ? 0 : -den, den);
            } else {
                num = rng.range(nonneg ? 0 : -9, 9);
            }
            if (nonneg && rng.below(3) == 0) num = 0;  // make disjoint supports reachable
            vec[static_cast<size_t>(e)] = Rat(num, den);
        }
        v.vectors.push_back(std::move(vec));
    }
    return v;
}

GridTilingInstance random_gridtiling(Rng& rng, int k, int n, int cell_size) {
    GridTilingInstance inst;
    inst.k = k;
    inst.n = n;
    inst.cells.assign(static_cast<size_t>(k), std::vector<std::vector<IntPair>>(static_cast<size_t>(k)));
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) {
            int m = static_cast<int>(rng.range(1, cell_size));
            std::set<IntPair> cell;
            while (static_cast<int>(cell.size()) < m) {
                cell.insert({static_cast<int>(rng.range(1, n)), static_cast<int>(rng.range(1, n))});
            }
            inst.cells[static_cast<size_t>(j)][static_cast<size_t>(i)].assign(cell.begin(), cell.end());
        }
    }
    inst.validate();
    return inst;
}

std::pair<GridTilingInstance, GtAssignment> random_gridtiling_planted(Rng& rng, int k, int n,
                                                                      int cell_size) {
    // Column values x_i and row values y_j make sigma(i,j) = (x_i, y_j)
    // fully consistent; noise pairs are added around the plant.
    std::vector<int> xs(static_cast<size_t>(k)), ys(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) xs[static_cast<size_t>(i)] = static_cast<int>(rng.range(1, n));
    for (int j = 0; j < k; ++j) ys[static_cast<size_t>(j)] = static_cast<int>(rng.range(1, n));

    GridTilingInstance inst;
    inst.k = k;
    inst.n = n;
    inst.cells.assign(static_cast<size_t>(k), std::vector<std::vector<IntPair>>(static_cast<size_t>(k)));
    GtAssignment plant = GtAssignment::empty(k);
    for (int j = 1; j <= k; ++j) {
        for (int i = 1; i <= k; ++i) {
            IntPair planted{xs[static_cast<size_t>(i - 1)], ys[static_cast<size_t>(j - 1)]};
            plant.at(i, j) = planted;
            std::set<IntPair> cell{planted};
            int m = static_cast<int>(rng.range(1, cell_size));
            while (static_cast<int>(cell.size()) < m) {
                cell.insert({static_cast<int>(rng.range(1, n)), static_cast<int>(rng.range(1, n))});
            }
            inst.cells[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)].assign(cell.begin(), cell.end());
        }
    }
    inst.validate();
    return {std::move(inst), std::move(plant)};
}

BcspInstance random_bcsp(Rng& rng, int k, int n, int density, int pairs_per_constraint) {
    BcspInstance inst;
    inst.k = k;
    inst.n = n;
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            if (static_cast<int>(rng.below(100)) >= density) continue;
            int m = static_cast<int>(rng.range(1, pairs_per_constraint));
            std::set<IntPair> pairs;
            while (static_cast<int>(pairs.size()) < m) {
                pairs.insert({static_cast<int>(rng.range(1, n)), static_cast<int>(rng.range(1, n))});
            }
            inst.constraints[{i, j}] = std::vector<IntPair>(pairs.begin(), pairs.end());
        }
    }
    inst.validate();
    return inst;
}

std::pair<BcspInstance, std::vector<int>> random_bcsp_planted(Rng& rng, int k, int n, int density,
                                                              int pairs_per_constraint) {
    std::vector<int> psi(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) psi[static_cast<size_t>(i)] = static_cast<int>(rng.range(1, n));
    BcspInstance inst;
    inst.k = k;
    inst.n = n;
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            if (static_cast<int>(rng.below(100)) >= density) continue;
            std::set<IntPair> pairs{{psi[static_cast<size_t>(i - 1)], psi[static_cast<size_t>(j - 1)]}};
            int m = static_cast<int>(rng.range(1, pairs_per_constraint));
            while (static_cast<int>(pairs.size()) < m) {
                pairs.insert({static_cast<int>(rng.range(1, n)), static_cast<int>(rng.range(1, n))});
            }
            inst.constraints[{i, j}] = std::vector<IntPair>(pairs.begin(), pairs.end());
        }
    }
    inst.validate();
    return {std::move(inst), std::move(psi)};
}

Json gen_ksum(const GenParams& p, uint64_t seed, bool planted) {
    if (p.n < 1 || p.k < 1 || p.k > p.n || p.max_val < 1) {
        throw std::invalid_argument("gen ksum: need 1 <= k <= n and max_val >= 1");
    }
    Rng rng(seed);
    std::vector<mpz_class> xs;
    mpz_class total(0);
    for (int i = 0; i < p.n; ++i) {
        long v = rng.range(1, p.max_val);
        xs.emplace_back(v);
        total += v;
    }
    mpz_class t;
    Json witness;
    if (planted) {
        // Target is the sum of a random k-subset; infeasible only if that
        // sum equals the total (k = n), which openness of (0,1) forbids.
        std::vector<int> idx(static_cast<size_t>(p.n));
        for (int i = 0; i < p.n; ++i) idx[static_cast<size_t>(i)] = i;
        for (int i = p.n - 1; i > 0; --i) {
            std::swap(idx[static_cast<size_t>(i)], idx[rng.below(static_cast<uint64_t>(i + 1))]);
        }
        idx.resize(static_cast<size_t>(p.k));
        std::sort(idx.begin(), idx.end());
        t = 0;
        for (int i : idx) t += xs[static_cast<size_t>(i)];
        if (t >= total) throw std::invalid_argument("gen ksum: planted target is not reachable in (0,1)");
        witness = Json::array();
        for (int i : idx) witness.push_back(i + 1);
    } else {
        if (total < 2) throw std::invalid_argument("gen ksum: no target lies strictly between 0 and the total");
        t = mpz_class(rng.range(1, mpz_class(total - 1).get_si()));
    }
    KSumInstance inst = ksum_normalize(xs, t, p.k);
    Json j = to_json(inst);
    if (planted) j["witness"] = witness;
    return j;
}

Json gen_gridtiling(const GenParams& p, uint64_t seed, bool planted) {
    if (!p.fixture.empty()) {
        if (p.fixture == "grid3x4") return to_json(grid3x4_fixture());
        throw std::invalid_argument("gen gridtiling: unknown fixture \"" + p.fixture + "\"");
    }
    if (p.k < 3 || p.n < 1 || p.cell_size < 1) {
        throw std::invalid_argument("gen gridtiling: need k >= 3, n >= 1, cell_size >= 1");
    }
    Rng rng(seed);
    if (planted) {
        auto [inst, plant] = random_gridtiling_planted(rng, p.k, p.n, p.cell_size);
        if (consistency(inst, plant) != 2 * p.k * p.k) {
            throw std::logic_error("gen gridtiling: planted witness is not fully consistent");
        }
        Json j = to_json(inst);
        j["witness"] = to_json(plant);
        return j;
    }
    return to_json(random_gridtiling(rng, p.k, p.n, p.cell_size));
}

Json gen_bcsp(const GenParams& p, uint64_t seed, bool planted) {
    if (p.k < 2 || p.n < 1 || p.density < 0 || p.density > 100 || p.pairs_per_constraint < 1) {
        throw std::invalid_argument("gen bcsp: invalid parameters");
    }
    Rng rng(seed);
    if (planted) {
        auto [inst, psi] = random_bcsp_planted(rng, p.k, p.n, p.density, p.pairs_per_constraint);
        if (bcsp_eval(inst, psi) != Rat(1)) {
            throw std::logic_error("gen bcsp: planted witness does not satisfy the instance");
        }
        Json j = to_json(inst);
        j["witness"] = psi;
        return j;
    }
    return to_json(random_bcsp(rng, p.k, p.n, p.density, p.pairs_per_constraint));
}

Json gen_vectors(const GenParams& p, uint64_t seed) {
    if (!p.fixture.empty()) {
        if (p.fixture == "four-vectors") return to_json(four_vectors_fixture());
        throw std::invalid_argument("gen vectors: unknown fixture \"" + p.fixture + "\"");
    }
    if (p.d < 1 || p.n < 1) throw std::invalid_argument("gen vectors: need d >= 1 and n >= 1");
    Rng rng(seed);
    return to_json(random_vectors(rng, p.d, p.n, p.unit_box, p.nonneg));
}

Json gen_gram(const GenParams& p, uint64_t seed) {
    if (p.d < 1 || p.n < 1) throw std::invalid_argument("gen gram: need d >= 1 and n >= 1");
    Rng rng(seed);
    return to_json(gram(random_vectors(rng, p.d, p.n, p.unit_box, p.nonneg)));
}

}  // namespace detmax
