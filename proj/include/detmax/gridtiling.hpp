#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "detmax/solvers.hpp"

namespace detmax {

using IntPair = std::pair<int, int>;  // (x, y) in [n]^2

/// Toroidal k x k grid of nonempty sets of integer pairs. Cells are
/// addressed (i, j) with 1-based column i and row j; vertical neighbors
/// (i, j) and (i, j+1 mod k) must agree in x, horizontal neighbors
/// (i, j) and (i+1 mod k, j) in y. k <= 2 is rejected: wrap-around would
/// duplicate neighbor pairs.
struct GridTilingInstance {
    int k = 0;
    int n = 0;
    std::vector<std::vector<std::vector<IntPair>>> cells;  // [row j-1][col i-1]

    const std::vector<IntPair>& cell(int i, int j) const {
        return cells[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)];
    }
    void validate() const;
};

/// One adjacency of the toroidal grid, stored pre-wrap in canonical
/// orientation: vertical as (i, j, i, j+1), horizontal as (i, j, i+1, j).
struct Adjacency {
    int i1, j1, i2, j2;
    bool vertical() const { return i1 == i2; }
    friend bool operator<(const Adjacency& a, const Adjacency& b) {
        return std::tie(a.i1, a.j1, a.i2, a.j2) < std::tie(b.i1, b.j1, b.i2, b.j2);
    }
    friend bool operator==(const Adjacency& a, const Adjacency& b) {
        return std::tie(a.i1, a.j1, a.i2, a.j2) == std::tie(b.i1, b.j1, b.i2, b.j2);
    }
};

/// All 2k^2 adjacencies, sorted lexicographically by (i1, j1, i2, j2).
std::vector<Adjacency> adjacency_pairs(int k);

inline int wrap(int v, int k) { return (v - 1) % k + 1; }

/// Assignment of one pair per cell; a disengaged optional marks an
/// undefined cell of a partial assignment.
struct GtAssignment {
    int k = 0;
    std::vector<std::optional<IntPair>> cells;  // row-major [j-1][i-1] flattened

    static GtAssignment empty(int k);
    std::optional<IntPair>& at(int i, int j) { return cells[static_cast<size_t>(j - 1) * k + (i - 1)]; }
    const std::optional<IntPair>& at(int i, int j) const {
        return cells[static_cast<size_t>(j - 1) * k + (i - 1)];
    }
    bool total() const;
};

/// Number of the 2k^2 adjacent cell pairs whose assigned pairs agree
/// (x for vertical, y for horizontal). Requires a total assignment with
/// every chosen pair inside its cell set. Inconsistency is 2k^2 minus this.
int consistency(const GridTilingInstance& inst, const GtAssignment& sigma);

struct GtSolveResult {
    GtAssignment assignment;
    int opt = 0;
};

/// Exhaustive exact optimum over the full product space, with the
/// lex-first tie break over cell-wise choice indices (row-major cells).
GtSolveResult gt_bruteforce(const GridTilingInstance& inst, const SolverLimits& lim = {});

/// Block decomposition approximation: cons(result) >= opt - eps*k^2.
/// Falls back to the exact search when eps*k < 4.
GtAssignment gt_block_approx(const GridTilingInstance& inst, const Rat& eps,
                             const SolverLimits& lim = {});

/// Binary CSP over k variables with alphabet [n]. Constraints are stored on
/// unordered pairs viewed from the smaller index; absent pairs mean the
/// full relation [n]^2.
struct BcspInstance {
    int k = 0;
    int n = 0;
    std::map<std::pair<int, int>, std::vector<IntPair>> constraints;  // key (i,j), i < j

    void validate() const;
    /// Pairs allowed for (i, j) with i < j; nullptr means unconstrained.
    const std::vector<IntPair>* constraint(int i, int j) const;
};

/// Fraction of the C(k,2) unordered variable pairs satisfied by psi
/// (psi[v-1] is the value of variable v).
Rat bcsp_eval(const BcspInstance& inst, const std::vector<int>& psi);

/// Grid Tiling instance with S_ii = [n]^2 and S_ij the (oriented) constraint
/// set; a satisfiable BCSP maps to optimal consistency 2k^2. Requires k >= 3
/// and every given constraint nonempty.
GridTilingInstance bcsp_to_gridtiling(const BcspInstance& inst);

}  // namespace detmax
