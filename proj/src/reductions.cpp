#include "detmax/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace detmax {

std::vector<PythTriple> pythagorean_triples(int n) {
    if (n < 1) throw std::invalid_argument("pythagorean_triples: n must be >= 1");
    std::vector<PythTriple> out;
    out.reserve(static_cast<size_t>(n));
    for (long x = 1; x <= n; ++x) {
        out.push_back({2 * x + 1, 2 * x * x + 2 * x, 2 * x * x + 2 * x + 1});
    }
    return out;
}

void KSumInstance::validate() const {
    if (k < 1 || k > n()) throw std::invalid_argument("k-sum: k out of range");
    if (g <= 0) throw std::invalid_argument("k-sum: granularity must be positive");
    Rat sum;
    for (const Rat& xi : x) {
        if (xi <= 0 || xi >= 1) throw std::invalid_argument("k-sum: values must lie in (0,1)");
        if (!(xi / g).is_integer()) throw std::invalid_argument("k-sum: value not a multiple of g");
        sum += xi;
    }
    if (sum != Rat(1)) throw std::invalid_argument("k-sum: values must sum to 1");
    if (t <= 0 || t >= 1) throw std::invalid_argument("k-sum: target must lie in (0,1)");
    if (!(t / g).is_integer()) throw std::invalid_argument("k-sum: target not a multiple of g");
}

KSumInstance ksum_normalize(const std::vector<mpz_class>& xs, const mpz_class& t, int k) {
    if (xs.empty()) throw std::invalid_argument("ksum_normalize: empty input");
    mpz_class total(0);
    for (const mpz_class& v : xs) {
        if (v <= 0) throw std::invalid_argument("ksum_normalize: values must be positive");
        total += v;
    }
    if (t <= 0 || t >= total) {
        throw std::invalid_argument("ksum_normalize: target must lie strictly between 0 and the total");
    }
    KSumInstance inst;
    inst.k = k;
    inst.g = Rat(mpz_class(1), total);
    inst.t = Rat(t, total);
    inst.x.reserve(xs.size());
    for (const mpz_class& v : xs) inst.x.emplace_back(v, total);
    inst.validate();
    return inst;
}

namespace {

// Smallest certified gap between distinct subset sums: all values and the
// target are multiples of g, and on instances meeting the granularity
// promise g >= n^-(2k+1) this equals the promise bound.
Rat ksum_gap(const KSumInstance& inst) {
    mpz_class nz;
    mpz_ui_pow_ui(nz.get_mpz_t(), static_cast<unsigned long>(inst.n()),
                  static_cast<unsigned long>(2 * inst.k + 1));
    Rat promise(mpz_class(1), nz);
    return std::min(promise, inst.g);
}

// e^x enclosed in rational bounds: value in [approx/(1+p), approx/(1-p)].
struct ExpEnclosure {
    Rat lo, hi;
};

ExpEnclosure enclose_exp(const Rat& x, const Rat& p) {
    Rat e = approx_exp(x, p);
    return {e / (Rat(1) + p), e / (Rat(1) - p)};
}

}  // namespace

ArrowheadReductionOutput ksum_to_arrowhead(const KSumInstance& inst, const ReductionLimits& lim) {
    inst.validate();
    const int n = inst.n();
    const int k = inst.k;

    ArrowheadReductionOutput out;
    out.kk = k + 1;
    out.alpha = Rat(1);
    out.beta = inst.t;
    out.gamma = Rat(5);
    out.delta = ksum_gap(inst);

    // Entry precision: (100000 k)^-k * (delta^2/2 - delta^3/3).
    mpz_class base = 100000 * mpz_class(k);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k));
    Rat d2 = out.delta * out.delta;
    out.epsilon = Rat(mpz_class(1), pw) * (d2 / Rat(2) - d2 * out.delta / Rat(3));

    {
        mpz_class inv_eps = out.epsilon.inv().ceil();
        if (mpz_sizeinbase(inv_eps.get_mpz_t(), 2) > lim.max_precision_bits) {
            throw resource_error("ksum_to_arrowhead: required precision exceeds the bit bound");
        }
    }

    // Vectors w_0..w_n in Q^(2n). The exact zeros of the construction are
    // emitted literally, so the Gram matrix is exactly arrowhead; only the
    // nonzero entries are approximated, each within a (1 +- epsilon) factor
    // (two half-precision approximations compose to at most that).
    Rat half_eps = out.epsilon / Rat(2);
    RatVectorSet w;
    w.d = 2 * n;
    w.vectors.assign(static_cast<size_t>(n + 1), RatVec(static_cast<size_t>(2 * n)));
    for (int j = 1; j <= n; ++j) {
        w.vectors[0][static_cast<size_t>(j - 1)] =
            out.gamma * approx_sqrt(inst.x[static_cast<size_t>(j - 1)], half_eps);
    }
    for (int i = 1; i <= n; ++i) {
        Rat ex = approx_exp(inst.x[static_cast<size_t>(i - 1)], half_eps);
        w.vectors[static_cast<size_t>(i)][static_cast<size_t>(i - 1)] =
            approx_sqrt(ex, half_eps);  // alpha = 1
        w.vectors[static_cast<size_t>(i)][static_cast<size_t>(n + i - 1)] =
            approx_sqrt(inst.t * ex, half_eps);
    }

    out.b = gram(w);

    // Decision threshold: a rational strictly between the largest NO-side
    // value (1/3 + 2/3 q) OPT and the smallest YES-side value
    // (2/3 + 1/3 q) OPT, where q = e^-delta (1 + delta) and
    // OPT = (1+t)^(k-1) gamma^2 e^t. Both endpoints are irrational, so we
    // compute shrinking rational enclosures until they separate.
    Rat p = out.delta * out.delta / Rat(100);
    for (int attempt = 0;; ++attempt) {
        ExpEnclosure et = enclose_exp(inst.t, p);
        ExpEnclosure ed = enclose_exp(out.delta, p);
        Rat opt_factor = Rat::pow(Rat(1) + inst.t, k - 1) * out.gamma * out.gamma;
        Rat opt_lo = opt_factor * et.lo;
        Rat opt_hi = opt_factor * et.hi;
        Rat one_delta = Rat(1) + out.delta;
        Rat q_lo = one_delta / ed.hi;  // e^-delta in [1/ed.hi, 1/ed.lo]
        Rat q_hi = one_delta / ed.lo;

        Rat third(1, 3);
        out.sound_hi = (third + 2 * third * q_hi) * opt_hi;
        out.complete_lo = (2 * third + third * q_lo) * opt_lo;
        if (out.sound_hi < out.complete_lo) break;
        if (attempt >= 8) throw std::logic_error("ksum_to_arrowhead: threshold enclosures failed to separate");
        p = p / Rat(1000);
    }
    out.theta = (out.sound_hi + out.complete_lo) / Rat(2);
    return out;
}

namespace {

// Canonical pre-wrap block keys for the four adjacencies of cell (i, j),
// in the reduction's fixed orientation.
struct CellKeys {
    Adjacency up, down, left, right;
};

CellKeys cell_keys(int i, int j, int k) {
    CellKeys c{};
    c.up = j >= 2 ? Adjacency{i, j - 1, i, j} : Adjacency{i, k, i, k + 1};
    c.down = Adjacency{i, j, i, j + 1};
    c.left = i >= 2 ? Adjacency{i - 1, j, i, j} : Adjacency{k, j, k + 1, j};
    c.right = Adjacency{i, j, i + 1, j};
    return c;
}

std::map<Adjacency, int> block_offsets(int k) {
    std::map<Adjacency, int> off;
    int pos = 0;
    for (const Adjacency& e : adjacency_pairs(k)) off[e] = pos++;
    return off;
}

}  // namespace

OrthoReductionOutput gridtiling_to_orthovectors(const GridTilingInstance& inst) {
    inst.validate();
    const int k = inst.k;
    auto triples = pythagorean_triples(inst.n);
    auto offsets = block_offsets(k);

    OrthoReductionOutput out;
    out.kk = k * k;
    out.vectors.d = 4 * k * k;  // 2k^2 two-dimensional blocks

    auto put = [&](RatVec& v, const Adjacency& e, const Rat& c0, const Rat& c1) {
        int base = 2 * offsets.at(e);
        v[static_cast<size_t>(base)] = c0;
        v[static_cast<size_t>(base + 1)] = c1;
    };

    for (int j = 1; j <= k; ++j) {
        for (int i = 1; i <= k; ++i) {
            CellKeys keys = cell_keys(i, j, k);
            for (const auto& [x, y] : inst.cell(i, j)) {
                const PythTriple& tx = triples[static_cast<size_t>(x - 1)];
                const PythTriple& ty = triples[static_cast<size_t>(y - 1)];
                Rat ax(tx.a), bx(tx.b), cx(tx.c);
                Rat ay(ty.a), by(ty.b), cy(ty.c);
                RatVec v(static_cast<size_t>(out.vectors.d));
                put(v, keys.up, -(bx / cx), ax / cx);
                put(v, keys.down, ax / cx, bx / cx);
                put(v, keys.left, -(by / cy), ay / cy);
                put(v, keys.right, ay / cy, by / cy);
                out.vectors.vectors.push_back(std::move(v));
                out.labels.push_back({i, j, x, y});
            }
        }
    }
    return out;
}

GadgetFamily civril_gadget(int ell, const ReductionLimits& lim) {
    if (ell <= 0 || ell % 2 != 0) throw std::invalid_argument("civril_gadget: ell must be even and positive");
    if (ell > lim.max_gadget_ell) throw resource_error("civril_gadget: ell exceeds the configured bound");

    // Rows of the order-2^ell Sylvester Hadamard matrix, with +1 mapped to
    // the coordinate pattern (1,0) and -1 to (0,1), scaled by 2^(-ell/2).
    // All the inner-product identities follow from row orthogonality.
    int m = 1 << ell;
    std::vector<std::vector<int>> h(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m)));
    h[0][0] = 1;
    for (int s = 1; s < m; s <<= 1) {
        for (int r = 0; r < s; ++r) {
            for (int c = 0; c < s; ++c) {
                h[static_cast<size_t>(r)][static_cast<size_t>(c + s)] = h[static_cast<size_t>(r)][static_cast<size_t>(c)];
                h[static_cast<size_t>(r + s)][static_cast<size_t>(c)] = h[static_cast<size_t>(r)][static_cast<size_t>(c)];
                h[static_cast<size_t>(r + s)][static_cast<size_t>(c + s)] = -h[static_cast<size_t>(r)][static_cast<size_t>(c)];
            }
        }
    }

    Rat scale(mpz_class(1), mpz_class(1) << (ell / 2));
    GadgetFamily fam;
    fam.ell = ell;
    fam.vectors.d = 2 * m;
    fam.vectors.vectors.reserve(static_cast<size_t>(m));
    for (int r = 0; r < m; ++r) {
        RatVec v(static_cast<size_t>(2 * m));
        for (int c = 0; c < m; ++c) {
            if (h[static_cast<size_t>(r)][static_cast<size_t>(c)] > 0) {
                v[static_cast<size_t>(2 * c)] = scale;
            } else {
                v[static_cast<size_t>(2 * c + 1)] = scale;
            }
        }
        fam.vectors.vectors.push_back(std::move(v));
    }
    return fam;
}

RatVec GadgetFamily::complement(int j) const {
    if (j < 1 || j > vectors.n()) throw std::out_of_range("gadget complement: index out of range");
    Rat scale(mpz_class(1), mpz_class(1) << (ell / 2));
    RatVec out(static_cast<size_t>(vectors.d));
    const RatVec& b = vectors.vectors[static_cast<size_t>(j - 1)];
    for (size_t e = 0; e < out.size(); ++e) out[e] = scale - b[e];
    return out;
}

DetMaxReductionOutput gridtiling_to_detmax(const GridTilingInstance& inst,
                                           const ReductionLimits& lim) {
    inst.validate();
    const int k = inst.k;

    // Gadget order: 2^ell >= n with ell even (and positive, so n = 1 also
    // gets a valid family).
    int ceil_log = 0;
    while ((1 << ceil_log) < inst.n) ++ceil_log;
    int ell = std::max(2, 2 * ceil_log);
    GadgetFamily fam = civril_gadget(ell, lim);
    int block_dim = fam.vectors.d;

    auto offsets = block_offsets(k);

    DetMaxReductionOutput out;
    out.kk = k * k;
    out.ell = ell;
    out.vectors.d = 2 * k * k * block_dim;

    auto put = [&](RatVec& v, const Adjacency& e, const RatVec& block) {
        int base = block_dim * offsets.at(e);
        for (int t = 0; t < block_dim; ++t) v[static_cast<size_t>(base + t)] = block[static_cast<size_t>(t)];
    };

    for (int j = 1; j <= k; ++j) {
        for (int i = 1; i <= k; ++i) {
            CellKeys keys = cell_keys(i, j, k);
            for (const auto& [x, y] : inst.cell(i, j)) {
                const RatVec& bx = fam.vectors.vectors[static_cast<size_t>(x - 1)];
                const RatVec& by = fam.vectors.vectors[static_cast<size_t>(y - 1)];
                RatVec v(static_cast<size_t>(out.vectors.d));
                put(v, keys.up, fam.complement(x));
                put(v, keys.down, bx);
                put(v, keys.left, fam.complement(y));
                put(v, keys.right, by);
                out.vectors.vectors.push_back(std::move(v));
                out.labels.push_back({i, j, x, y});
            }
        }
    }

    GramMatrix g = gram(out.vectors);
    out.a_tilde.psd = g.psd;
    out.a_tilde.m = Matrix(g.order());
    Rat quarter(1, 4);
    for (int r = 0; r < g.order(); ++r)
        for (int c = 0; c < g.order(); ++c) out.a_tilde.m.at(r, c) = g.m.at(r, c) * quarter;
    return out;
}

int dup_count(const std::vector<VectorLabel>& labels, int k, const IndexSet& s) {
    std::set<std::pair<int, int>> covered;
    for (int idx : s) {
        if (idx < 1 || idx > static_cast<int>(labels.size())) {
            throw std::out_of_range("dup_count: index out of range");
        }
        const VectorLabel& l = labels[static_cast<size_t>(idx - 1)];
        covered.insert({l.i, l.j});
    }
    return k * k - static_cast<int>(covered.size());
}

}  // namespace detmax
