#include "detmax/gridtiling.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace detmax {

void GridTilingInstance::validate() const {
    if (k < 3) throw std::invalid_argument("grid tiling: k must be >= 3");
    if (n < 1) throw std::invalid_argument("grid tiling: n must be >= 1");
    if (static_cast<int>(cells.size()) != k) throw std::invalid_argument("grid tiling: wrong row count");
    for (const auto& row : cells) {
        if (static_cast<int>(row.size()) != k) throw std::invalid_argument("grid tiling: wrong column count");
        for (const auto& c : row) {
            if (c.empty()) throw std::invalid_argument("grid tiling: empty cell set");
            std::set<IntPair> seen;
            for (const auto& [x, y] : c) {
                if (x < 1 || x > n || y < 1 || y > n) {
                    throw std::invalid_argument("grid tiling: pair outside [n]^2");
                }
                if (!seen.insert({x, y}).second) {
                    throw std::invalid_argument("grid tiling: duplicate pair in a cell");
                }
            }
        }
    }
}

std::vector<Adjacency> adjacency_pairs(int k) {
    if (k < 3) throw std::invalid_argument("adjacency_pairs: k must be >= 3");
    std::vector<Adjacency> out;
    out.reserve(static_cast<size_t>(2 * k * k));
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) {
            out.push_back({i, j, i, j + 1});  // vertical
            out.push_back({i, j, i + 1, j});  // horizontal
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

GtAssignment GtAssignment::empty(int k) {
    GtAssignment a;
    a.k = k;
    a.cells.assign(static_cast<size_t>(k) * k, std::nullopt);
    return a;
}

bool GtAssignment::total() const {
    return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.has_value(); });
}

namespace {

bool adjacency_consistent(const Adjacency& e, const IntPair& p1, const IntPair& p2) {
    return e.vertical() ? p1.first == p2.first : p1.second == p2.second;
}

}  // namespace

int consistency(const GridTilingInstance& inst, const GtAssignment& sigma) {
    inst.validate();
    if (sigma.k != inst.k || !sigma.total()) {
        throw std::invalid_argument("consistency: assignment must be total on the grid");
    }
    for (int j = 1; j <= inst.k; ++j) {
        for (int i = 1; i <= inst.k; ++i) {
            const auto& cell = inst.cell(i, j);
            if (std::find(cell.begin(), cell.end(), *sigma.at(i, j)) == cell.end()) {
                throw std::invalid_argument("consistency: assigned pair outside its cell set");
            }
        }
    }
    int count = 0;
    for (const Adjacency& e : adjacency_pairs(inst.k)) {
        const IntPair& p1 = *sigma.at(wrap(e.i1, inst.k), wrap(e.j1, inst.k));
        const IntPair& p2 = *sigma.at(wrap(e.i2, inst.k), wrap(e.j2, inst.k));
        if (adjacency_consistent(e, p1, p2)) ++count;
    }
    return count;
}

namespace {

// Exhaustive search over the product space of a cell subset, DFS in
// row-major cell order with choice indices increasing, so the first strict
// maximum is the lex-smallest optimum. Scoring is incremental over the
// adjacencies whose both endpoints lie in the subset; an admissible bound
// (score + unscored pairs) prunes branches that cannot strictly improve.
struct SubgridSolver {
    const GridTilingInstance& inst;
    std::vector<std::pair<int, int>> order;             // cells (i, j), row-major
    std::vector<int> cell_pos;                          // (j-1)*k+(i-1) -> position in order, or -1
    // For each position p: adjacencies to earlier positions, as (earlier position, vertical, swap).
    struct Edge { int other; bool vertical; };
    std::vector<std::vector<Edge>> back_edges;
    int total_pairs = 0;

    std::vector<int> choice;
    std::vector<const IntPair*> value;
    std::vector<int> best_choice;
    int best_score = -1;

    SubgridSolver(const GridTilingInstance& gt, const std::vector<std::pair<int, int>>& cells_in)
        : inst(gt) {
        int k = inst.k;
        cell_pos.assign(static_cast<size_t>(k) * k, -1);
        order = cells_in;
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            return std::tie(a.second, a.first) < std::tie(b.second, b.first);
        });
        for (size_t p = 0; p < order.size(); ++p) {
            auto [i, j] = order[p];
            cell_pos[static_cast<size_t>(j - 1) * k + (i - 1)] = static_cast<int>(p);
        }
        back_edges.assign(order.size(), {});
        for (const Adjacency& e : adjacency_pairs(k)) {
            int p1 = cell_pos[static_cast<size_t>(wrap(e.j1, k) - 1) * k + (wrap(e.i1, k) - 1)];
            int p2 = cell_pos[static_cast<size_t>(wrap(e.j2, k) - 1) * k + (wrap(e.i2, k) - 1)];
            if (p1 < 0 || p2 < 0) continue;
            ++total_pairs;
            int lo = std::min(p1, p2), hi = std::max(p1, p2);
            back_edges[static_cast<size_t>(hi)].push_back({lo, e.vertical()});
        }
        choice.assign(order.size(), 0);
        value.assign(order.size(), nullptr);
    }

    void dfs(size_t pos, int score, int pairs_seen) {
        if (pos == order.size()) {
            if (score > best_score) {
                best_score = score;
                best_choice = choice;
            }
            return;
        }
        if (score + (total_pairs - pairs_seen) <= best_score) return;  // cannot strictly improve
        auto [i, j] = order[pos];
        const auto& cell = inst.cell(i, j);
        for (size_t c = 0; c < cell.size(); ++c) {
            choice[pos] = static_cast<int>(c);
            value[pos] = &cell[c];
            int gained = 0;
            for (const Edge& e : back_edges[pos]) {
                const IntPair& q = *value[static_cast<size_t>(e.other)];
                const IntPair& p = cell[c];
                if (e.vertical ? p.first == q.first : p.second == q.second) ++gained;
            }
            dfs(pos + 1, score + gained, pairs_seen + static_cast<int>(back_edges[pos].size()));
        }
    }

    // Assignments are compared by their choice-index tuples, so the result
    // does not depend on the pair values themselves.
    void solve(const SolverLimits& lim) {
        mpz_class space(1);
        for (const auto& [i, j] : order) {
            space *= static_cast<unsigned long>(inst.cell(i, j).size());
            if (space > static_cast<long>(lim.max_assignments)) {
                throw resource_error("grid tiling search: assignment space exceeds the limit");
            }
        }
        best_score = -1;
        dfs(0, 0, 0);
    }
};

}  // namespace

GtSolveResult gt_bruteforce(const GridTilingInstance& inst, const SolverLimits& lim) {
    inst.validate();
    std::vector<std::pair<int, int>> all;
    for (int j = 1; j <= inst.k; ++j)
        for (int i = 1; i <= inst.k; ++i) all.emplace_back(i, j);
    SubgridSolver s(inst, all);
    s.solve(lim);
    GtAssignment a = GtAssignment::empty(inst.k);
    for (size_t p = 0; p < s.order.size(); ++p) {
        auto [i, j] = s.order[p];
        a.at(i, j) = inst.cell(i, j)[static_cast<size_t>(s.best_choice[p])];
    }
    return GtSolveResult{std::move(a), s.best_score};
}

GtAssignment gt_block_approx(const GridTilingInstance& inst, const Rat& eps,
                             const SolverLimits& lim) {
    inst.validate();
    if (eps <= 0) throw std::invalid_argument("gt_block_approx: eps must be positive");
    int k = inst.k;

    if (eps * Rat(k) < Rat(4)) {
        return gt_bruteforce(inst, lim).assignment;
    }

    // l = floor(eps*k/2 - 1) blocks per axis, each of side at most
    // B = ceil(k/l); only pairs internal to a block are optimized, and at
    // most 2*k*l pairs cross blocks, which bounds the loss by eps*k^2.
    mpz_class l_z = (eps * Rat(k) / Rat(2) - Rat(1)).floor();
    long l = l_z.get_si();
    long b = (k + l - 1) / l;

    GtAssignment result = GtAssignment::empty(k);
    for (long bj = 1; bj <= l; ++bj) {
        long j_lo = b * (bj - 1) + 1, j_hi = std::min(b * bj, static_cast<long>(k));
        if (j_lo > j_hi) continue;
        for (long bi = 1; bi <= l; ++bi) {
            long i_lo = b * (bi - 1) + 1, i_hi = std::min(b * bi, static_cast<long>(k));
            if (i_lo > i_hi) continue;
            std::vector<std::pair<int, int>> block;
            for (long j = j_lo; j <= j_hi; ++j)
                for (long i = i_lo; i <= i_hi; ++i) block.emplace_back(static_cast<int>(i), static_cast<int>(j));
            SubgridSolver s(inst, block);
            s.solve(lim);
            for (size_t p = 0; p < s.order.size(); ++p) {
                auto [i, j] = s.order[p];
                result.at(i, j) = inst.cell(i, j)[static_cast<size_t>(s.best_choice[p])];
            }
        }
    }
    return result;
}

void BcspInstance::validate() const {
    if (k < 2) throw std::invalid_argument("bcsp: k must be >= 2");
    if (n < 1) throw std::invalid_argument("bcsp: n must be >= 1");
    for (const auto& [key, pairs] : constraints) {
        auto [i, j] = key;
        if (i < 1 || j < 1 || i > k || j > k || i >= j) {
            throw std::invalid_argument("bcsp: constraint key must satisfy 1 <= i < j <= k");
        }
        if (pairs.empty()) throw std::invalid_argument("bcsp: empty constraint");
        std::set<IntPair> seen;
        for (const auto& [a, bv] : pairs) {
            if (a < 1 || a > n || bv < 1 || bv > n) {
                throw std::invalid_argument("bcsp: constraint pair outside [n]^2");
            }
            if (!seen.insert({a, bv}).second) throw std::invalid_argument("bcsp: duplicate constraint pair");
        }
    }
}

const std::vector<IntPair>* BcspInstance::constraint(int i, int j) const {
    auto it = constraints.find({i, j});
    return it == constraints.end() ? nullptr : &it->second;
}

Rat bcsp_eval(const BcspInstance& inst, const std::vector<int>& psi) {
    inst.validate();
    if (static_cast<int>(psi.size()) != inst.k) {
        throw std::invalid_argument("bcsp_eval: assignment must cover all variables");
    }
    for (int v : psi) {
        if (v < 1 || v > inst.n) throw std::invalid_argument("bcsp_eval: value outside alphabet");
    }
    long satisfied = 0;
    long total = static_cast<long>(inst.k) * (inst.k - 1) / 2;
    for (int i = 1; i <= inst.k; ++i) {
        for (int j = i + 1; j <= inst.k; ++j) {
            const auto* c = inst.constraint(i, j);
            if (!c) { ++satisfied; continue; }  // absent pair: full relation
            IntPair want{psi[static_cast<size_t>(i - 1)], psi[static_cast<size_t>(j - 1)]};
            if (std::find(c->begin(), c->end(), want) != c->end()) ++satisfied;
        }
    }
    return Rat(satisfied, total);
}

GridTilingInstance bcsp_to_gridtiling(const BcspInstance& inst) {
    inst.validate();
    if (inst.k < 3) throw std::invalid_argument("bcsp_to_gridtiling: k must be >= 3");

    std::vector<IntPair> full;
    for (int x = 1; x <= inst.n; ++x)
        for (int y = 1; y <= inst.n; ++y) full.emplace_back(x, y);

    GridTilingInstance gt;
    gt.k = inst.k;
    gt.n = inst.n;
    gt.cells.assign(static_cast<size_t>(inst.k),
                    std::vector<std::vector<IntPair>>(static_cast<size_t>(inst.k)));
    for (int j = 1; j <= inst.k; ++j) {
        for (int i = 1; i <= inst.k; ++i) {
            std::vector<IntPair>& cell = gt.cells[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)];
            if (i == j) {
                cell = full;
            } else if (i < j) {
                const auto* c = inst.constraint(i, j);
                cell = c ? *c : full;
            } else {
                const auto* c = inst.constraint(j, i);
                if (c) {
                    for (const auto& [a, b] : *c) cell.emplace_back(b, a);  // C_ji viewed from i
                    std::sort(cell.begin(), cell.end());
                } else {
                    cell = full;
                }
            }
        }
    }
    gt.validate();
    return gt;
}

}  // namespace detmax
