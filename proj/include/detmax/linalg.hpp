#pragma once

#include <utility>
#include <vector>

#include "detmax/rational.hpp"

namespace detmax {

using RatVec = std::vector<Rat>;

/// Sorted sequence of distinct indices. Interpretation is contextual:
/// 1-based [1..n] for ordinary matrices and vector sets, 0-based [0..n]
/// for arrowhead instances (index 0 is the hub row/column).
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<int> idx);

    static IndexSet range(int lo, int hi);  // {lo, lo+1, ..., hi}

    int size() const { return static_cast<int>(idx_.size()); }
    bool empty() const { return idx_.empty(); }
    int operator[](int i) const { return idx_[static_cast<size_t>(i)]; }
    bool contains(int v) const;
    IndexSet shifted(int delta) const;

    std::vector<int>::const_iterator begin() const { return idx_.begin(); }
    std::vector<int>::const_iterator end() const { return idx_.end(); }
    const std::vector<int>& values() const { return idx_; }

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.idx_ == b.idx_; }
    friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.idx_ < b.idx_; }

private:
    std::vector<int> idx_;
};

/// Ordered collection of n rational vectors sharing dimension d >= 1.
struct RatVectorSet {
    int d = 0;
    std::vector<RatVec> vectors;

    int n() const { return static_cast<int>(vectors.size()); }
    void validate() const;
};

Rat inner(const RatVec& a, const RatVec& b);

/// Dense square rational matrix, 0-based storage.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

    int order() const { return n_; }
    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    static Matrix identity(int n);
    bool is_symmetric() const;

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

private:
    int n_ = 0;
    std::vector<Rat> a_;
};

enum class PsdProvenance { ConstructedFromVectors, Asserted };

/// Symmetric matrix tagged with how we know it is PSD. When provenance is
/// ConstructedFromVectors the entries are exact pairwise inner products of
/// the generating set.
struct GramMatrix {
    Matrix m;
    PsdProvenance psd = PsdProvenance::Asserted;

    int order() const { return m.order(); }
    void validate() const;  // symmetry, nonnegative diagonal
};

/// Exact Gram matrix of a vector set.
GramMatrix gram(const RatVectorSet& v);

/// Exact determinant via fraction-free Bareiss elimination on the
/// denominator-cleared integer matrix. det of the 0x0 matrix is 1.
Rat det(const Matrix& a);
Rat det(const GramMatrix& a);

/// Principal submatrix A_S; S is 1-based, order preserved.
Matrix principal_submatrix(const Matrix& a, const IndexSet& s);

/// Squared volume of the parallelepiped spanned by {v_i : i in S}, computed
/// by exact rational Gram-Schmidt distances (the independent route to
/// det(gram(V)_S)). S is 1-based; vol^2 of the empty set is 1.
Rat vol_squared(const RatVectorSet& v, const IndexSet& s);

/// Undirected edges (i, j), i < j, 1-based, wherever A_ij != 0 or A_ji != 0.
std::vector<std::pair<int, int>> symmetrized_graph(const Matrix& a);

/// Nonzeros only in row 0, column 0, or the diagonal (hub row 0).
bool is_arrowhead(const Matrix& a);
/// Nonzeros only where |i - j| <= 1.
bool is_tridiagonal(const Matrix& a);

/// Closed-form determinant of a principal submatrix of an arrowhead matrix
/// of order n+1 (labels 0..n). S is 0-based over [0..n]. Requires the
/// arrowhead structure; a zero diagonal entry among labels 1..n falls back
/// to the generic determinant.
Rat arrowhead_det(const Matrix& a, const IndexSet& s);

/// Calls fn on every size-k subset of {1..n} in lexicographic order.
/// fn receives the subset as a sorted vector of 1-based indices.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> c(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i + 1;
    const std::vector<int>& view = c;
    while (true) {
        fn(view);
        int i = k - 1;
        while (i >= 0 && c[static_cast<size_t>(i)] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++c[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
    }
}

/// C(n, k) with saturation at `cap` (avoids overflow in resource checks).
unsigned long long binomial_capped(int n, int k, unsigned long long cap);

}  // namespace detmax
