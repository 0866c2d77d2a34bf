#pragma once

#include <cstdint>
#include <string>

#include "detmax/io.hpp"
#include "detmax/rng.hpp"

namespace detmax {

/// Knobs for the seeded instance generators. Unused fields are ignored by
/// generators that do not need them.
struct GenParams {
    int n = 4;
    int k = 3;
    int d = 3;
    long max_val = 8;        // k-sum integer values are drawn from [1..max_val]
    int cell_size = 2;       // pairs per grid cell (upper bound)
    int density = 100;       // percentage of bcsp variable pairs that get a constraint
    int pairs_per_constraint = 2;
    bool unit_box = false;   // vector entries restricted to [-1,1]
    bool nonneg = false;     // vector entries restricted to >= 0
    std::string fixture;     // "four-vectors" | "grid3x4" | ""
};

// Each generator is a deterministic function of (params, seed) and returns
// the instance JSON; planted variants add a "witness" field holding a
// certificate that was verified during generation.
Json gen_ksum(const GenParams& p, uint64_t seed, bool planted);
Json gen_gridtiling(const GenParams& p, uint64_t seed, bool planted);
Json gen_bcsp(const GenParams& p, uint64_t seed, bool planted);
Json gen_vectors(const GenParams& p, uint64_t seed);
Json gen_gram(const GenParams& p, uint64_t seed);

/// The worked 4-vector example set (d = 3).
RatVectorSet four_vectors_fixture();
/// The worked k = 3, n = 4 Grid Tiling example with a known solution.
GridTilingInstance grid3x4_fixture();
/// The solution assignment of grid3x4_fixture (consistency 18).
GtAssignment grid3x4_solution();

/// Random vector set: entries p/q with small numerators/denominators;
/// optionally restricted to the unit box or to nonnegative entries (with
/// zero entries likely, so supports vary).
RatVectorSet random_vectors(Rng& rng, int d, int n, bool unit_box, bool nonneg);

/// Random grid tiling instance with 1..cell_size pairs per cell; the planted
/// variant guarantees a fully consistent assignment (returned separately).
GridTilingInstance random_gridtiling(Rng& rng, int k, int n, int cell_size);
std::pair<GridTilingInstance, GtAssignment> random_gridtiling_planted(Rng& rng, int k, int n,
                                                                      int cell_size);

BcspInstance random_bcsp(Rng& rng, int k, int n, int density, int pairs_per_constraint);
std::pair<BcspInstance, std::vector<int>> random_bcsp_planted(Rng& rng, int k, int n, int density,
                                                              int pairs_per_constraint);

}  // namespace detmax
