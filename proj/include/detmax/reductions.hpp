#pragma once

#include "detmax/gridtiling.hpp"

namespace detmax {

/// Primitive Pythagorean triple; a^2 + b^2 = c^2 with pairwise-coprime
/// components. (a/c, b/c) is a rational point on the unit circle.
struct PythTriple {
    long a, b, c;
};

/// The linear family (2x+1, 2x^2+2x, 2x^2+2x+1) for x = 1..n.
std::vector<PythTriple> pythagorean_triples(int n);

/// Normalized k-subset-sum instance: rationals in (0,1) summing to 1, all
/// integer multiples of the granularity g, target t in (0,1).
struct KSumInstance {
    std::vector<Rat> x;
    Rat t;
    int k = 0;
    Rat g;

    int n() const { return static_cast<int>(x.size()); }
    void validate() const;
};

/// Divides positive integers and the target by their total. Subset sums are
/// preserved: sum_{i in S} x_i = t iff the integer sums match.
KSumInstance ksum_normalize(const std::vector<mpz_class>& xs, const mpz_class& t, int k);

struct ReductionLimits {
    unsigned long max_precision_bits = 1u << 16;  // guard on log2(1/epsilon)
    int max_gadget_ell = 10;                      // 2^ell vectors of dimension 2^(ell+1)
};

/// Output of the k-subset-sum -> arrowhead determinant reduction. The Gram
/// matrix B has order n+1 (hub label 0) and the decision contract
///   maxdet(B, kk) >= theta  iff  the k-subset-sum instance is a YES instance,
/// with theta certified to lie strictly between the rational enclosures
/// sound_hi (largest possible NO-side value) and complete_lo (smallest
/// possible YES-side value).
struct ArrowheadReductionOutput {
    GramMatrix b;
    int kk = 0;  // k + 1
    Rat theta;
    Rat sound_hi;
    Rat complete_lo;
    Rat alpha, beta, gamma, delta, epsilon;
};

ArrowheadReductionOutput ksum_to_arrowhead(const KSumInstance& inst,
                                           const ReductionLimits& lim = {});

/// Which (cell, pair) a reduction vector encodes.
struct VectorLabel {
    int i, j, x, y;
};

/// Grid Tiling -> pairwise-orthogonal-vectors reduction. One 4k^2-dimensional
/// vector per (cell, pair), squared norm 4; the instance has a solution iff
/// the output contains k^2 pairwise orthogonal vectors.
struct OrthoReductionOutput {
    RatVectorSet vectors;
    int kk = 0;  // k^2
    std::vector<VectorLabel> labels;
};

OrthoReductionOutput gridtiling_to_orthovectors(const GridTilingInstance& inst);

/// 2^ell unit vectors of dimension 2^(ell+1) with entries in {0, 2^(-ell/2)};
/// pairwise inner products 1/2, products with distinct complements 1/2, and
/// <b_i, complement(b_i)> = 0. ell must be even and positive.
struct GadgetFamily {
    int ell = 0;
    RatVectorSet vectors;

    /// complement(j) = 2^(-ell/2) * all-ones - b_j (1-based j).
    RatVec complement(int j) const;
};

GadgetFamily civril_gadget(int ell, const ReductionLimits& lim = {});

/// Grid Tiling -> Determinant Maximization gap reduction. a_tilde is the
/// gadget-block Gram matrix scaled to unit diagonal; if the instance has
/// optimal consistency 2k^2 then maxdet(a_tilde, k^2) = 1, and optimal
/// consistency <= 2k^2 - d forces maxdet(a_tilde, k^2) <= 0.999^d.
struct DetMaxReductionOutput {
    GramMatrix a_tilde;
    int kk = 0;  // k^2
    int ell = 0;
    std::vector<VectorLabel> labels;
    RatVectorSet vectors;  // unscaled vectors (squared norm 4)
};

DetMaxReductionOutput gridtiling_to_detmax(const GridTilingInstance& inst,
                                           const ReductionLimits& lim = {});

/// Number of grid cells with no selected vector ("duplicates" bound the
/// volume); cov(S) = k^2 - dup(S). S is 1-based into the labels.
int dup_count(const std::vector<VectorLabel>& labels, int k, const IndexSet& s);

}  // namespace detmax
