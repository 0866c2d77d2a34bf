#include "detmax/solvers.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace detmax {

namespace {

void check_k(int k, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("k out of range");
}

}  // namespace

DetMaxSolution maxdet_bruteforce(const GramMatrix& a, int k, const SolverLimits& lim) {
    int n = a.order();
    check_k(k, n);
    if (binomial_capped(n, k, lim.max_subsets) > lim.max_subsets) {
        throw resource_error("maxdet_bruteforce: C(n,k) exceeds the subset limit");
    }
    bool have = false;
    DetMaxSolution best;
    for_each_subset(n, k, [&](const std::vector<int>& s) {
        Rat d = det(principal_submatrix(a.m, IndexSet(s)));
        if (!have || d > best.value) {
            have = true;
            best.subset = IndexSet(s);
            best.value = d;
        }
    });
    return best;
}

DetMaxSolution maxdet_greedy(const RatVectorSet& v, int k) {
    v.validate();
    int n = v.n();
    check_k(k, n);

    std::vector<bool> taken(static_cast<size_t>(n), false);
    std::vector<RatVec> basis;
    std::vector<Rat> basis_norm2;
    std::vector<int> chosen;
    Rat value(1);

    for (int round = 0; round < k; ++round) {
        int best_i = -1;
        Rat best_d2;
        RatVec best_res;
        for (int i = 0; i < n; ++i) {
            if (taken[static_cast<size_t>(i)]) continue;
            RatVec r = v.vectors[static_cast<size_t>(i)];
            for (size_t b = 0; b < basis.size(); ++b) {
                Rat coeff = inner(r, basis[b]) / basis_norm2[b];
                if (!coeff.is_zero()) {
                    for (size_t e = 0; e < r.size(); ++e) r[e] -= coeff * basis[b][e];
                }
            }
            Rat d2 = inner(r, r);
            if (best_i < 0 || d2 > best_d2) {
                best_i = i;
                best_d2 = d2;
                best_res = std::move(r);
            }
        }
        taken[static_cast<size_t>(best_i)] = true;
        chosen.push_back(best_i + 1);
        value *= best_d2;
        if (!best_d2.is_zero()) {
            basis.push_back(std::move(best_res));
            basis_norm2.push_back(best_d2);
        }
    }
    return DetMaxSolution{IndexSet(chosen), value};
}

Rat additive_grid_step(int d, const Rat& eps) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    mpz_class inv_eps = eps.inv().floor();
    if (inv_eps < 1) inv_eps = 1;  // eps > 1: the eps = 1 grid already suffices
    mpz_class dd;
    mpz_ui_pow_ui(dd.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(2 * d + 1));
    return Rat(mpz_class(1), inv_eps * 6 * dd);
}

Rat round_to_grid(const Rat& x, const Rat& delta) {
    // Nearest multiple of delta, ties toward -infinity: ceil(x/delta - 1/2).
    Rat q = x / delta - Rat(1, 2);
    return Rat(q.ceil()) * delta;
}

DetMaxSolution maxdet_additive_approx(const RatVectorSet& v, int k, const Rat& eps,
                                      const SolverLimits& lim) {
    v.validate();
    int n = v.n();
    int d = v.d;
    check_k(k, n);
    if (k > d) throw std::invalid_argument("additive approx requires k <= d");
    for (const auto& vec : v.vectors) {
        for (const auto& e : vec) {
            if (e < Rat(-1) || e > Rat(1)) {
                throw std::invalid_argument("additive approx requires entries in [-1,1]");
            }
        }
    }

    Rat delta = additive_grid_step(d, eps);

    // Round every coordinate to the grid and deduplicate; each distinct
    // rounded vector is represented by its smallest original index.
    RatVectorSet rounded;
    rounded.d = d;
    rounded.vectors.reserve(static_cast<size_t>(n));
    std::map<RatVec, int> first_of;
    std::vector<int> reps;
    for (int i = 0; i < n; ++i) {
        RatVec w(static_cast<size_t>(d));
        for (int e = 0; e < d; ++e) {
            w[static_cast<size_t>(e)] = round_to_grid(v.vectors[static_cast<size_t>(i)][static_cast<size_t>(e)], delta);
        }
        rounded.vectors.push_back(w);
        if (first_of.emplace(std::move(w), i + 1).second) reps.push_back(i + 1);
    }

    if (static_cast<int>(reps.size()) < k) {
        // Fewer than k distinct rounded vectors: every k-minor of the rounded
        // Gram matrix vanishes, so any set meets the additive bound. Return
        // the lex-smallest one with its exact original determinant.
        IndexSet s = IndexSet::range(1, k);
        GramMatrix g = gram(v);
        return DetMaxSolution{s, det(principal_submatrix(g.m, s))};
    }

    int m = static_cast<int>(reps.size());
    if (binomial_capped(m, k, lim.max_subsets) > lim.max_subsets) {
        throw resource_error("maxdet_additive_approx: rounded subset enumeration exceeds the limit");
    }

    GramMatrix gb = gram(rounded);
    bool have = false;
    Rat best_val;
    std::vector<int> best;  // original indices
    for_each_subset(m, k, [&](const std::vector<int>& sel) {
        std::vector<int> orig(sel.size());
        for (size_t i = 0; i < sel.size(); ++i) orig[i] = reps[static_cast<size_t>(sel[i] - 1)];
        Rat dv = det(principal_submatrix(gb.m, IndexSet(orig)));
        if (!have || dv > best_val) {
            have = true;
            best_val = dv;
            best = orig;
        }
    });

    GramMatrix g = gram(v);
    IndexSet s(best);
    return DetMaxSolution{s, det(principal_submatrix(g.m, s))};
}

namespace {

// DFS in increasing index order; the first complete set found is the
// lexicographically smallest one.
bool ortho_dfs(const std::vector<std::vector<bool>>& ok, int n, int k, int start,
               std::vector<int>& acc) {
    if (static_cast<int>(acc.size()) == k) return true;
    for (int i = start; i < n; ++i) {
        if (n - i < k - static_cast<int>(acc.size())) break;
        bool fits = true;
        for (int j : acc) {
            if (!ok[static_cast<size_t>(j)][static_cast<size_t>(i)]) { fits = false; break; }
        }
        if (!fits) continue;
        acc.push_back(i);
        if (ortho_dfs(ok, n, k, i + 1, acc)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace

std::optional<IndexSet> find_orthogonal_set(const RatVectorSet& v, int k) {
    v.validate();
    int n = v.n();
    check_k(k, n);
    std::vector<std::vector<bool>> ok(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool o = inner(v.vectors[static_cast<size_t>(i)], v.vectors[static_cast<size_t>(j)]).is_zero();
            ok[static_cast<size_t>(i)][static_cast<size_t>(j)] = o;
            ok[static_cast<size_t>(j)][static_cast<size_t>(i)] = o;
        }
    }
    std::vector<int> acc;
    if (!ortho_dfs(ok, n, k, 0, acc)) return std::nullopt;
    for (int& i : acc) ++i;
    return IndexSet(acc);
}

namespace {

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i; else ++j;
    }
    return true;
}

bool packing_dfs(const std::vector<std::vector<int>>& supp, int need, int start,
                 std::vector<int>& acc) {
    if (need == 0) return true;
    int m = static_cast<int>(supp.size());
    for (int i = start; i < m; ++i) {
        bool fits = true;
        for (int j : acc) {
            if (!disjoint(supp[static_cast<size_t>(j)], supp[static_cast<size_t>(i)])) { fits = false; break; }
        }
        if (!fits) continue;
        acc.push_back(i);
        if (packing_dfs(supp, need - 1, i + 1, acc)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace

std::optional<IndexSet> find_orthogonal_set_nonneg(const RatVectorSet& v, int k) {
    v.validate();
    int n = v.n();
    check_k(k, n);
    for (const auto& vec : v.vectors) {
        for (const auto& e : vec) {
            if (e < 0) throw std::invalid_argument("nonnegative orthogonal search: negative entry");
        }
    }
    if (k > v.d) return std::nullopt;

    // Zero vectors are orthogonal to everything (including each other);
    // collect them separately, then pack disjoint nonempty supports.
    std::vector<int> zero_idx;
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> supports;   // distinct, nonempty
    std::vector<int> supp_rep;                // smallest original index per support
    for (int i = 0; i < n; ++i) {
        std::vector<int> nz;
        for (int e = 0; e < v.d; ++e) {
            if (v.vectors[static_cast<size_t>(i)][static_cast<size_t>(e)] > 0) nz.push_back(e);
        }
        if (nz.empty()) {
            zero_idx.push_back(i + 1);
        } else if (seen.insert(nz).second) {
            supports.push_back(std::move(nz));
            supp_rep.push_back(i + 1);
        }
    }

    int need = k - static_cast<int>(zero_idx.size());
    if (need < 0) need = 0;
    std::vector<int> acc;
    if (!packing_dfs(supports, need, 0, acc)) return std::nullopt;

    std::vector<int> result;
    for (int j : acc) result.push_back(supp_rep[static_cast<size_t>(j)]);
    for (int z : zero_idx) {
        if (static_cast<int>(result.size()) == k) break;
        result.push_back(z);
    }
    return IndexSet(result);
}

}  // namespace detmax
