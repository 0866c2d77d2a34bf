#pragma once

#include <optional>

#include "detmax/linalg.hpp"

namespace detmax {

/// A size-k index set together with the exact determinant it achieves.
/// Exact solvers return the lexicographically smallest optimal subset.
struct DetMaxSolution {
    IndexSet subset;  // 1-based
    Rat value;        // det(A_subset), exact
};

struct SolverLimits {
    unsigned long long max_subsets = 50'000'000;     // subset enumeration guard
    unsigned long long max_assignments = 100'000'000;  // grid assignment guard
};

/// Exhaustive maximum over all C(n,k) principal k-minors.
DetMaxSolution maxdet_bruteforce(const GramMatrix& a, int k, const SolverLimits& lim = {});

/// Greedy volume maximization: repeatedly picks the vector with maximum
/// exact squared distance to the span of the chosen ones (max norm first,
/// smallest index on ties). value >= maxdet(A,k) / (k!)^2.
DetMaxSolution maxdet_greedy(const RatVectorSet& v, int k);

/// Additive approximation by coordinate rounding: requires every entry in
/// [-1,1] and k <= d; guarantees det(A_S) >= maxdet(A,k) - eps.
DetMaxSolution maxdet_additive_approx(const RatVectorSet& v, int k, const Rat& eps,
                                      const SolverLimits& lim = {});

/// Grid step used by maxdet_additive_approx: 1 / (max(1, floor(1/eps)) * 6 * d^(2d+1)).
Rat additive_grid_step(int d, const Rat& eps);

/// Rounds x to the nearest multiple of delta in [-1,1]; exact ties round
/// toward -infinity.
Rat round_to_grid(const Rat& x, const Rat& delta);

/// Lexicographically smallest S with <v_i, v_j> = 0 for all i != j in S,
/// by exhaustive search; nullopt if none exists.
std::optional<IndexSet> find_orthogonal_set(const RatVectorSet& v, int k);

/// Same decision for entry-wise nonnegative inputs, via disjointness of
/// supports (set packing over at most 2^d distinct supports). Requires all
/// entries >= 0; returns nullopt immediately when k > d.
std::optional<IndexSet> find_orthogonal_set_nonneg(const RatVectorSet& v, int k);

}  // namespace detmax
