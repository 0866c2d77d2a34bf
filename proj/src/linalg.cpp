#include "detmax/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace detmax {

IndexSet::IndexSet(std::vector<int> idx) : idx_(std::move(idx)) {
    std::sort(idx_.begin(), idx_.end());
    if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end()) {
        throw std::invalid_argument("IndexSet: duplicate index");
    }
}

IndexSet IndexSet::range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return IndexSet(std::move(v));
}

bool IndexSet::contains(int v) const {
    return std::binary_search(idx_.begin(), idx_.end(), v);
}

IndexSet IndexSet::shifted(int delta) const {
    std::vector<int> v = idx_;
    for (int& x : v) x += delta;
    return IndexSet(std::move(v));
}

void RatVectorSet::validate() const {
    if (d < 1) throw std::invalid_argument("vector set: dimension must be >= 1");
    if (vectors.empty()) throw std::invalid_argument("vector set: must contain at least one vector");
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != d) {
            throw std::invalid_argument("vector set: inconsistent vector dimension");
        }
    }
}

Rat inner(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
    Rat s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Matrix Matrix::identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Matrix::is_symmetric() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

void GramMatrix::validate() const {
    if (!m.is_symmetric()) throw std::invalid_argument("gram matrix: not symmetric");
    for (int i = 0; i < m.order(); ++i) {
        if (m.at(i, i) < 0) throw std::invalid_argument("gram matrix: negative diagonal entry");
    }
}

GramMatrix gram(const RatVectorSet& v) {
    v.validate();
    int n = v.n();
    GramMatrix g;
    g.m = Matrix(n);
    g.psd = PsdProvenance::ConstructedFromVectors;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Rat p = inner(v.vectors[static_cast<size_t>(i)], v.vectors[static_cast<size_t>(j)]);
            g.m.at(i, j) = p;
            g.m.at(j, i) = p;
        }
    }
    return g;
}

Rat det(const Matrix& a) {
    int n = a.order();
    if (n == 0) return Rat(1);

    // Clear denominators row by row (tracking the product of multipliers),
    // then run integer fraction-free Bareiss elimination. This keeps
    // intermediate entries polynomially bounded, unlike rational Gaussian
    // elimination.
    std::vector<mpz_class> m(static_cast<size_t>(n) * n);
    mpz_class scale(1);
    for (int i = 0; i < n; ++i) {
        mpz_class l(1);
        for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.at(i, j).den().get_mpz_t());
        for (int j = 0; j < n; ++j) {
            const Rat& e = a.at(i, j);
            m[static_cast<size_t>(i) * n + j] = e.num() * (l / e.den());
        }
        scale *= l;
    }

    auto at = [&](int i, int j) -> mpz_class& { return m[static_cast<size_t>(i) * n + j]; };
    int sign = 1;
    mpz_class prev(1);
    for (int k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i) {
                if (at(i, k) != 0) { piv = i; break; }
            }
            if (piv < 0) return Rat(0);
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    mpz_class d = at(n - 1, n - 1);
    if (sign < 0) d = -d;
    return Rat(d, scale);
}

Rat det(const GramMatrix& a) { return det(a.m); }

Matrix principal_submatrix(const Matrix& a, const IndexSet& s) {
    int n = a.order();
    for (int v : s) {
        if (v < 1 || v > n) throw std::out_of_range("principal_submatrix: index out of range");
    }
    Matrix r(s.size());
    for (int i = 0; i < s.size(); ++i)
        for (int j = 0; j < s.size(); ++j) r.at(i, j) = a.at(s[i] - 1, s[j] - 1);
    return r;
}

Rat vol_squared(const RatVectorSet& v, const IndexSet& s) {
    v.validate();
    for (int i : s) {
        if (i < 1 || i > v.n()) throw std::out_of_range("vol_squared: index out of range");
    }
    if (s.empty()) return Rat(1);

    // Exact Gram-Schmidt: vol^2 = prod of squared distances to the span of
    // the previously selected vectors. A singular prefix gives distance 0
    // and hence overall volume 0.
    std::vector<RatVec> basis;       // orthogonalized, nonzero
    std::vector<Rat> basis_norm2;
    Rat vol2(1);
    for (int i : s) {
        RatVec r = v.vectors[static_cast<size_t>(i - 1)];
        for (size_t b = 0; b < basis.size(); ++b) {
            Rat coeff = inner(r, basis[b]) / basis_norm2[b];
            if (!coeff.is_zero()) {
                for (size_t e = 0; e < r.size(); ++e) r[e] -= coeff * basis[b][e];
            }
        }
        Rat d2 = inner(r, r);
        if (d2.is_zero()) return Rat(0);
        vol2 *= d2;
        basis.push_back(std::move(r));
        basis_norm2.push_back(d2);
    }
    return vol2;
}

std::vector<std::pair<int, int>> symmetrized_graph(const Matrix& a) {
    std::vector<std::pair<int, int>> edges;
    int n = a.order();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!a.at(i, j).is_zero() || !a.at(j, i).is_zero()) edges.emplace_back(i + 1, j + 1);
    return edges;
}

bool is_arrowhead(const Matrix& a) {
    int n = a.order();
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            if (i != j && !a.at(i, j).is_zero()) return false;
    return true;
}

bool is_tridiagonal(const Matrix& a) {
    int n = a.order();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((i > j ? i - j : j - i) >= 2 && !a.at(i, j).is_zero()) return false;
    return true;
}

Rat arrowhead_det(const Matrix& a, const IndexSet& s) {
    int order = a.order();  // labels 0..order-1
    if (!is_arrowhead(a)) throw std::invalid_argument("arrowhead_det: matrix is not arrowhead");
    for (int v : s) {
        if (v < 0 || v >= order) throw std::out_of_range("arrowhead_det: index out of range");
    }
    for (int i = 1; i < order; ++i) {
        if (a.at(i, i).is_zero()) {
            // Outside the closed form's precondition; the generic determinant
            // still applies.
            return det(principal_submatrix(a, s.shifted(1)));
        }
    }
    if (!s.contains(0)) {
        Rat p(1);
        for (int i : s) p *= a.at(i, i);
        return p;
    }
    Rat prod(1);
    Rat hub = a.at(0, 0);
    for (int i : s) {
        if (i == 0) continue;
        prod *= a.at(i, i);
        hub -= a.at(0, i) * a.at(i, 0) / a.at(i, i);
    }
    return prod * hub;
}

unsigned long long binomial_capped(int n, int k, unsigned long long cap) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    if (!c.fits_ulong_p() || c.get_ui() > cap) return cap + 1;
    return c.get_ui();
}

}  // namespace detmax
