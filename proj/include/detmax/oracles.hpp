#pragma once

#include "detmax/gridtiling.hpp"

namespace detmax::oracles {

/// Determinant by cofactor expansion along the first row. O(n!) — the
/// independent check against Bareiss elimination for small orders.
inline Rat cofactor_det(const Matrix& a) {
    int n = a.order();
    if (n == 0) return Rat(1);
    if (n == 1) return a.at(0, 0);
    Rat sum;
    for (int c = 0; c < n; ++c) {
        if (a.at(0, c).is_zero()) continue;
        Matrix minor(n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int j = 0; j < n; ++j) {
                if (j == c) continue;
                minor.at(i - 1, cc++) = a.at(i, j);
            }
        }
        Rat term = a.at(0, c) * cofactor_det(minor);
        if (c % 2 == 0) sum += term; else sum -= term;
    }
    return sum;
}

/// Consistent/inconsistent re-count over unordered cell pairs (toroidal
/// adjacency by index difference), independent of the canonical adjacency
/// list. For a total assignment the two counts sum to 2k^2.
struct ConsistencyCounts {
    int consistent = 0;
    int inconsistent = 0;
};

inline ConsistencyCounts consistency_counts(const GridTilingInstance& inst,
                                            const GtAssignment& sigma) {
    int k = inst.k;
    auto adjacent1 = [k](int a, int b) {
        int d = std::abs(a - b);
        return d == 1 || d == k - 1;
    };
    ConsistencyCounts c;
    for (int j1 = 1; j1 <= k; ++j1)
        for (int i1 = 1; i1 <= k; ++i1)
            for (int j2 = j1; j2 <= k; ++j2)
                for (int i2 = (j2 == j1 ? i1 + 1 : 1); i2 <= k; ++i2) {
                    const IntPair& p1 = *sigma.at(i1, j1);
                    const IntPair& p2 = *sigma.at(i2, j2);
                    if (i1 == i2 && adjacent1(j1, j2)) {
                        (p1.first == p2.first ? c.consistent : c.inconsistent) += 1;
                    }
                    if (j1 == j2 && adjacent1(i1, i2)) {
                        (p1.second == p2.second ? c.consistent : c.inconsistent) += 1;
                    }
                }
    return c;
}

inline int consistency_scan(const GridTilingInstance& inst, const GtAssignment& sigma) {
    return consistency_counts(inst, sigma).consistent;
}

/// Satisfied-constraint recount for BCSP, scanning unordered pairs directly.
inline Rat bcsp_eval_scan(const BcspInstance& inst, const std::vector<int>& psi) {
    long sat = 0;
    for (int i = 1; i <= inst.k; ++i) {
        for (int j = i + 1; j <= inst.k; ++j) {
            const auto* c = inst.constraint(i, j);
            if (!c) {
                ++sat;
                continue;
            }
            for (const auto& [a, b] : *c) {
                if (a == psi[static_cast<size_t>(i - 1)] && b == psi[static_cast<size_t>(j - 1)]) {
                    ++sat;
                    break;
                }
            }
        }
    }
    return Rat(sat, static_cast<long>(inst.k) * (inst.k - 1) / 2);
}

/// Optimal consistency by a plain odometer scan over the full product
/// space, no pruning. The independent check for the DFS search.
inline int gt_scan_opt(const GridTilingInstance& inst) {
    int k = inst.k;
    std::vector<size_t> choice(static_cast<size_t>(k) * k, 0);
    GtAssignment sigma = GtAssignment::empty(k);
    int best = -1;
    while (true) {
        size_t c = 0;
        for (int j = 1; j <= k; ++j)
            for (int i = 1; i <= k; ++i) sigma.at(i, j) = inst.cell(i, j)[choice[c++]];
        best = std::max(best, consistency_scan(inst, sigma));
        size_t pos = choice.size();
        while (pos > 0) {
            --pos;
            int j = static_cast<int>(pos) / k + 1, i = static_cast<int>(pos) % k + 1;
            if (choice[pos] + 1 < inst.cell(i, j).size()) {
                ++choice[pos];
                std::fill(choice.begin() + static_cast<long>(pos) + 1, choice.end(), 0);
                break;
            }
            if (pos == 0) return best;
        }
    }
}

/// Does some k-subset of xs sum to t? Direct enumeration.
inline bool subset_sum_decision(const std::vector<mpz_class>& xs, const mpz_class& t, int k) {
    int n = static_cast<int>(xs.size());
    bool found = false;
    for_each_subset(n, k, [&](const std::vector<int>& s) {
        if (found) return;
        mpz_class sum(0);
        for (int i : s) sum += xs[static_cast<size_t>(i - 1)];
        if (sum == t) found = true;
    });
    return found;
}

/// Rational enclosure of e^x from a fixed-length Taylor prefix: the true
/// value lies in [lo, hi]. For x in [0,1] and terms >= 2 the remainder is
/// at most twice the last term.
struct ExpOracle {
    Rat lo, hi;
};

inline ExpOracle taylor_exp_oracle(const Rat& x, int terms) {
    Rat sum(1), term(1);
    for (int m = 1; m <= terms; ++m) {
        term *= x / Rat(m);
        sum += term;
    }
    return {sum, sum + 2 * term};
}

}  // namespace detmax::oracles
