#include "detmax/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include "detmax/gen.hpp"
#include "detmax/oracles.hpp"

namespace detmax {

Json to_json(const VerificationReport& r) {
    Json fails = Json::array();
    for (const auto& f : r.failures) {
        fails.push_back(Json{{"what", f.what}, {"counterexample", f.counterexample}});
    }
    return Json{{"suite", r.suite},
                {"trials", r.trials},
                {"failures", std::move(fails)},
                {"wall_seconds", r.wall_seconds}};
}

namespace {

using Suite = std::function<void(VerificationReport&, long, uint64_t)>;

void fail(VerificationReport& rep, std::string what, Json cx = Json::object()) {
    rep.failures.push_back({std::move(what), std::move(cx)});
}

Rat factorial_squared(int k) {
    Rat f(1);
    for (int i = 2; i <= k; ++i) f *= Rat(i);
    return f * f;
}

Matrix random_square(Rng& rng, int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = Rat(rng.range(-9, 9), rng.range(1, 6));
    return m;
}

Matrix random_arrowhead(Rng& rng, int order) {
    Matrix m(order);
    for (int i = 0; i < order; ++i) {
        long v = rng.range(-9, 9);
        if (i >= 1 && v == 0) v = 1;  // nonzero diagonal away from the hub
        m.at(i, i) = Rat(v, rng.range(1, 4));
    }
    for (int i = 1; i < order; ++i) {
        m.at(0, i) = Rat(rng.range(-9, 9), rng.range(1, 4));
        m.at(i, 0) = Rat(rng.range(-9, 9), rng.range(1, 4));
    }
    return m;
}

IndexSet random_subset(Rng& rng, int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) {
        if (rng.coin()) v.push_back(i);
    }
    return IndexSet(std::move(v));
}

IndexSet random_ksubset(Rng& rng, int n, int k) {
    std::vector<int> idx(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i + 1;
    for (int i = n - 1; i > 0; --i) {
        std::swap(idx[static_cast<size_t>(i)], idx[rng.below(static_cast<uint64_t>(i + 1))]);
    }
    idx.resize(static_cast<size_t>(k));
    return IndexSet(std::move(idx));
}

// ---------------------------------------------------------------- suites --

void suite_golden_vectors(VerificationReport& rep, long, uint64_t) {
    RatVectorSet v = four_vectors_fixture();
    GramMatrix a = gram(v);
    ++rep.trials;
    long expected[4][4] = {{25, 10, 5, 15}, {10, 13, 5, 9}, {5, 5, 11, 7}, {15, 9, 7, 11}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (a.m.at(i, j) != Rat(expected[i][j])) {
                fail(rep, "gram entry mismatch", Json{{"i", i + 1}, {"j", j + 1}, {"got", a.m.at(i, j).str()}});
            }

    Rat d123 = det(principal_submatrix(a.m, IndexSet({1, 2, 3})));
    if (d123 != Rat(2025)) fail(rep, "det on {1,2,3} is not 2025", Json{{"got", d123.str()}});
    Rat d124 = det(principal_submatrix(a.m, IndexSet({1, 2, 4})));
    if (d124 != Rat(225)) fail(rep, "det on {1,2,4} is not 225", Json{{"got", d124.str()}});
    if (det(principal_submatrix(a.m, IndexSet())) != Rat(1)) fail(rep, "empty principal minor is not 1");

    DetMaxSolution best = maxdet_bruteforce(a, 3);
    if (!(best.subset == IndexSet({1, 2, 3})) || best.value != Rat(2025)) {
        fail(rep, "brute-force optimum is not ({1,2,3}, 2025)",
             Json{{"subset", best.subset.values()}, {"value", best.value.str()}});
    }
}

void suite_golden_grid(VerificationReport& rep, long, uint64_t) {
    GridTilingInstance inst = grid3x4_fixture();
    ++rep.trials;

    if (consistency(inst, grid3x4_solution()) != 18) fail(rep, "known solution does not score 18");
    GtSolveResult solved = gt_bruteforce(inst);
    if (solved.opt != 18) fail(rep, "exhaustive optimum is not 18", Json{{"opt", solved.opt}});

    OrthoReductionOutput ortho = gridtiling_to_orthovectors(inst);
    if (ortho.vectors.n() != 18) fail(rep, "expected 18 vectors", Json{{"n", ortho.vectors.n()}});
    if (ortho.vectors.d != 36) fail(rep, "expected dimension 36", Json{{"d", ortho.vectors.d}});
    for (int i = 0; i < ortho.vectors.n(); ++i) {
        const RatVec& vec = ortho.vectors.vectors[static_cast<size_t>(i)];
        if (inner(vec, vec) != Rat(4)) fail(rep, "vector squared norm is not 4", Json{{"index", i + 1}});
    }
    auto found = find_orthogonal_set(ortho.vectors, 9);
    if (!found) {
        fail(rep, "no 9 pairwise orthogonal vectors found");
    } else {
        for (int a = 0; a < 9; ++a)
            for (int b = a + 1; b < 9; ++b) {
                const RatVec& va = ortho.vectors.vectors[static_cast<size_t>((*found)[a] - 1)];
                const RatVec& vb = ortho.vectors.vectors[static_cast<size_t>((*found)[b] - 1)];
                if (!inner(va, vb).is_zero()) fail(rep, "reported orthogonal set is not orthogonal");
            }
    }

    DetMaxReductionOutput gap = gridtiling_to_detmax(inst);
    for (int i = 0; i < gap.a_tilde.order(); ++i) {
        if (gap.a_tilde.m.at(i, i) != Rat(1)) fail(rep, "normalized diagonal entry is not 1", Json{{"i", i + 1}});
    }
    DetMaxSolution best = maxdet_bruteforce(gap.a_tilde, 9);
    if (best.value != Rat(1)) {
        fail(rep, "maximum 9-minor of the normalized matrix is not 1", Json{{"value", best.value.str()}});
    }
}

void suite_ksum_endtoend(VerificationReport& rep, long trials, uint64_t) {
    // Exhaustive sweep: value multisets from [1..8] of size n <= 5, every
    // target strictly inside (0, total), every k <= min(3, n). trials > 0
    // caps the instance count for quick runs.
    const long max_val = 8;
    long done = 0;
    long yes_count = 0, no_count = 0;
    for (int n = 2; n <= 5 && (trials == 0 || done < trials); ++n) {
        std::vector<long> vals(static_cast<size_t>(n), 1);
        while (true) {
            std::vector<mpz_class> xs(vals.begin(), vals.end());
            mpz_class total(0);
            for (const auto& v : xs) total += v;
            for (int k = 1; k <= std::min(3, n) && (trials == 0 || done < trials); ++k) {
                for (mpz_class t(1); t < total && (trials == 0 || done < trials); ++t) {
                    ++done;
                    ++rep.trials;
                    KSumInstance inst = ksum_normalize(xs, t, k);
                    ArrowheadReductionOutput out = ksum_to_arrowhead(inst);
                    bool reduced = maxdet_bruteforce(out.b, out.kk).value >= out.theta;
                    bool direct = oracles::subset_sum_decision(xs, t, k);
                    (direct ? yes_count : no_count) += 1;
                    if (reduced != direct) {
                        Json cx = to_json(inst);
                        cx["theta"] = out.theta.str();
                        cx["direct"] = direct;
                        fail(rep, "reduction decision disagrees with subset-sum enumeration", cx);
                    }
                    if (!is_arrowhead(out.b.m)) fail(rep, "reduction output is not arrowhead");
                }
            }
            // next multiset (nondecreasing tuples enumerate multisets once)
            int pos = n - 1;
            while (pos >= 0 && vals[static_cast<size_t>(pos)] == max_val) --pos;
            if (pos < 0) break;
            long nv = vals[static_cast<size_t>(pos)] + 1;
            for (int i = pos; i < n; ++i) vals[static_cast<size_t>(i)] = nv;
            if (trials != 0 && done >= trials) break;
        }
    }
    // Agreement is only meaningful if both answers actually occur.
    if (done > 100 && (yes_count == 0 || no_count == 0)) {
        fail(rep, "sweep did not exercise both decisions",
             Json{{"yes", yes_count}, {"no", no_count}});
    }
}

void suite_gadget_identities(VerificationReport& rep, long, uint64_t) {
    for (int ell : {2, 4, 6}) {
        ++rep.trials;
        GadgetFamily fam = civril_gadget(ell);
        int m = fam.vectors.n();
        if (m != (1 << ell)) fail(rep, "wrong family size", Json{{"ell", ell}});
        if (fam.vectors.d != (1 << (ell + 1))) fail(rep, "wrong dimension", Json{{"ell", ell}});
        Rat half(1, 2);
        Rat entry(mpz_class(1), mpz_class(1) << (ell / 2));
        for (int i = 1; i <= m; ++i) {
            const RatVec& bi = fam.vectors.vectors[static_cast<size_t>(i - 1)];
            for (const Rat& e : bi) {
                if (!e.is_zero() && e != entry) {
                    fail(rep, "entry outside {0, 2^(-ell/2)}", Json{{"ell", ell}, {"i", i}});
                }
            }
            if (inner(bi, bi) != Rat(1)) fail(rep, "vector is not unit norm", Json{{"ell", ell}, {"i", i}});
            if (!inner(bi, fam.complement(i)).is_zero()) {
                fail(rep, "vector is not orthogonal to its own complement", Json{{"ell", ell}, {"i", i}});
            }
            for (int j = 1; j <= m; ++j) {
                if (i == j) continue;
                const RatVec& bj = fam.vectors.vectors[static_cast<size_t>(j - 1)];
                if (inner(bi, bj) != half) fail(rep, "pairwise product is not 1/2", Json{{"ell", ell}, {"i", i}, {"j", j}});
                if (inner(bi, fam.complement(j)) != half) {
                    fail(rep, "product with a distinct complement is not 1/2", Json{{"ell", ell}, {"i", i}, {"j", j}});
                }
                if (inner(fam.complement(i), fam.complement(j)) != inner(bi, bj)) {
                    fail(rep, "complement pair product differs from the pair product", Json{{"ell", ell}, {"i", i}, {"j", j}});
                }
            }
        }
    }
}

void suite_additive_rounding(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 200;
    Rng rng(seed);
    const Rat eps_choices[3] = {Rat(1), Rat(1, 2), Rat(1, 4)};
    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        int d = static_cast<int>(rng.range(1, 3));
        int k = static_cast<int>(rng.range(1, d));
        int n = static_cast<int>(rng.range(k, 8));
        Rat eps = eps_choices[t % 3];
        RatVectorSet v = random_vectors(rng, d, n, /*unit_box=*/true, /*nonneg=*/false);

        GramMatrix a = gram(v);
        DetMaxSolution approx = maxdet_additive_approx(v, k, eps);
        DetMaxSolution exact = maxdet_bruteforce(a, k);
        Json cx{{"instance", to_json(v)}, {"k", k}, {"eps", eps.str()}};
        if (approx.value < exact.value - eps) {
            cx["approx"] = approx.value.str();
            cx["opt"] = exact.value.str();
            fail(rep, "additive guarantee violated", cx);
        }

        // Intermediate rounding claim: |det(A_S) - det(B_S)| <= 3 d^(2d+1) Delta
        // for every enumerated subset, and the distinct rounded vectors stay
        // within the grid-size bound.
        Rat delta = additive_grid_step(d, eps);
        RatVectorSet rounded;
        rounded.d = d;
        for (const auto& vec : v.vectors) {
            RatVec w(vec.size());
            for (size_t e = 0; e < vec.size(); ++e) w[e] = round_to_grid(vec[e], delta);
            rounded.vectors.push_back(std::move(w));
        }
        GramMatrix b = gram(rounded);
        mpz_class dpow;
        mpz_ui_pow_ui(dpow.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(2 * d + 1));
        Rat bound = Rat(3) * Rat(dpow) * delta;
        bool bad = false;
        for_each_subset(n, k, [&](const std::vector<int>& s) {
            if (bad) return;
            IndexSet is(s);
            Rat diff = (det(principal_submatrix(a.m, is)) - det(principal_submatrix(b.m, is))).abs();
            if (diff > bound) {
                bad = true;
                Json c2 = cx;
                c2["subset"] = s;
                c2["diff"] = diff.str();
                c2["bound"] = bound.str();
                fail(rep, "rounded determinant drift exceeds the claim", c2);
            }
        });

        std::set<RatVec> distinct(rounded.vectors.begin(), rounded.vectors.end());
        Rat grid_count = Rat::pow(Rat(2) / delta + Rat(1), d);
        if (Rat(static_cast<long>(distinct.size())) > grid_count) {
            fail(rep, "distinct rounded vectors exceed the grid bound", cx);
        }
    }
}

void suite_block_approx(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 50;
    Rng rng(seed);
    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        GridTilingInstance inst = random_gridtiling(rng, 4, 3, 3);
        int opt = gt_bruteforce(inst).opt;
        for (const Rat& eps : {Rat(1), Rat(2)}) {
            GtAssignment approx = gt_block_approx(inst, eps);
            int cons = consistency(inst, approx);
            Rat lossbound = eps * Rat(inst.k * inst.k);
            if (Rat(opt) - Rat(cons) > lossbound) {
                Json cx{{"instance", to_json(inst)}, {"eps", eps.str()}, {"opt", opt}, {"cons", cons}};
                fail(rep, "block approximation misses the additive bound", cx);
            }
        }
    }
    // eps*k < 4 falls back to the exact search.
    for (long t = 0; t < 5; ++t) {
        ++rep.trials;
        GridTilingInstance inst = random_gridtiling(rng, 3, 3, 2);
        int opt = gt_bruteforce(inst).opt;
        int cons = consistency(inst, gt_block_approx(inst, Rat(1, 2)));
        if (cons != opt) {
            fail(rep, "small-eps fallback is not exact", Json{{"instance", to_json(inst)}, {"opt", opt}, {"cons", cons}});
        }
    }
}

void suite_volume_accounting(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 500;
    Rng rng(seed);
    DetMaxReductionOutput gap = gridtiling_to_detmax(grid3x4_fixture());
    GramMatrix a = gram(gap.vectors);  // unscaled: diagonal 4
    int n = gap.vectors.n();
    int kk = gap.kk;
    Rat four_pow = Rat::pow(Rat(4), kk);
    for (long t = 0; t < trials; ++t) {
        IndexSet s = random_ksubset(rng, n, kk);
        int dup = dup_count(gap.labels, 3, s);
        if (dup > kk / 2) {
            --t;  // outside the claim's hypothesis; resample
            continue;
        }
        ++rep.trials;
        Rat vol2 = det(principal_submatrix(a.m, s));
        Rat bound = four_pow * Rat::pow(Rat(3, 4), dup);
        if (vol2 > bound) {
            fail(rep, "squared volume exceeds the duplicate-decay bound",
                 Json{{"subset", s.values()}, {"dup", dup}, {"vol2", vol2.str()}, {"bound", bound.str()}});
        }
    }
}

void suite_oracle_equivalence(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 1000;
    Rng rng(seed);

    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        int n = static_cast<int>(rng.range(1, 5));
        Matrix m = random_square(rng, n);
        Rat fast = det(m);
        Rat slow = oracles::cofactor_det(m);
        if (fast != slow) {
            fail(rep, "elimination and cofactor determinants disagree",
                 Json{{"n", n}, {"bareiss", fast.str()}, {"cofactor", slow.str()}});
        }
        // det(c*M_S) = c^|S| det(M_S)
        Rat c(rng.range(-5, 5), rng.range(1, 4));
        IndexSet s = random_subset(rng, 1, n);
        Matrix sub = principal_submatrix(m, s);
        Matrix scaled(sub.order());
        for (int i = 0; i < sub.order(); ++i)
            for (int j = 0; j < sub.order(); ++j) scaled.at(i, j) = c * sub.at(i, j);
        if (det(scaled) != Rat::pow(c, s.size()) * det(sub)) {
            fail(rep, "determinant scaling identity fails", Json{{"n", n}, {"c", c.str()}});
        }
    }

    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        int order = static_cast<int>(rng.range(2, 7));
        Matrix m = random_arrowhead(rng, order);
        IndexSet s = random_subset(rng, 0, order - 1);
        Rat closed = arrowhead_det(m, s);
        Rat generic = det(principal_submatrix(m, s.shifted(1)));
        if (closed != generic) {
            fail(rep, "arrowhead closed form disagrees with the generic determinant",
                 Json{{"order", order}, {"subset", s.values()}});
        }
    }

    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        int d = static_cast<int>(rng.range(1, 6));
        int n = static_cast<int>(rng.range(1, 8));
        RatVectorSet v = random_vectors(rng, d, n, false, false);
        GramMatrix g = gram(v);
        g.validate();  // symmetry + nonnegative diagonal on every input
        IndexSet s = random_subset(rng, 1, n);
        if (vol_squared(v, s) != det(principal_submatrix(g.m, s))) {
            fail(rep, "squared volume disagrees with the Gram minor",
                 Json{{"instance", to_json(v)}, {"subset", s.values()}});
        }
    }
    // A few instances swept over every subset.
    for (long t = 0; t < std::min<long>(trials, 25); ++t) {
        int d = static_cast<int>(rng.range(1, 4));
        int n = static_cast<int>(rng.range(1, 6));
        RatVectorSet v = random_vectors(rng, d, n, false, false);
        GramMatrix g = gram(v);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            ++rep.trials;
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) idx.push_back(i + 1);
            IndexSet s(idx);
            if (vol_squared(v, s) != det(principal_submatrix(g.m, s))) {
                fail(rep, "squared volume disagrees with the Gram minor (full sweep)",
                     Json{{"instance", to_json(v)}, {"subset", s.values()}});
            }
        }
    }

    long agree_trials = std::min<long>(trials, 200);
    for (long t = 0; t < agree_trials; ++t) {
        ++rep.trials;
        int d = static_cast<int>(rng.range(1, 6));
        int n = static_cast<int>(rng.range(1, 8));
        int k = static_cast<int>(rng.range(1, d));
        if (k > n) k = n;
        RatVectorSet v = random_vectors(rng, d, n, false, /*nonneg=*/true);
        auto generic = find_orthogonal_set(v, k);
        auto packed = find_orthogonal_set_nonneg(v, k);
        if (generic.has_value() != packed.has_value()) {
            fail(rep, "support packing disagrees with the generic search",
                 Json{{"instance", to_json(v)}, {"k", k}});
        }
        if (packed) {
            for (int a = 0; a < packed->size(); ++a)
                for (int b = a + 1; b < packed->size(); ++b) {
                    const RatVec& va = v.vectors[static_cast<size_t>((*packed)[a] - 1)];
                    const RatVec& vb = v.vectors[static_cast<size_t>((*packed)[b] - 1)];
                    if (!inner(va, vb).is_zero()) fail(rep, "support packing returned a non-orthogonal set");
                }
        }
    }
}

void suite_greedy_bound(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 200;
    Rng rng(seed);
    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        int d = static_cast<int>(rng.range(1, 4));
        int n = static_cast<int>(rng.range(1, 8));
        int k = static_cast<int>(rng.range(1, std::min(3, n)));
        RatVectorSet v = random_vectors(rng, d, n, false, false);
        DetMaxSolution greedy = maxdet_greedy(v, k);
        DetMaxSolution exact = maxdet_bruteforce(gram(v), k);
        if (greedy.value * factorial_squared(k) < exact.value) {
            fail(rep, "greedy misses the (k!)^2 volume guarantee",
                 Json{{"instance", to_json(v)}, {"k", k}, {"greedy", greedy.value.str()}, {"opt", exact.value.str()}});
        }
        // Reported value is the exact determinant of the reported subset.
        if (greedy.value != det(principal_submatrix(gram(v).m, greedy.subset))) {
            fail(rep, "greedy value is not the determinant of its subset");
        }
    }
}

void suite_rational_approx(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 1000;
    Rng rng(seed);
    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        Rat x(rng.range(1, 400), rng.range(1, 400));
        Rat eps;
        switch (t % 3) {
            case 0: eps = Rat(1, rng.range(2, 1000)); break;
            case 1: eps = Rat(1, 1000000); break;
            default: eps = Rat(1, 1000000000L); break;
        }
        Rat r = approx_sqrt(x, eps);
        Rat ratio = r * r / x;
        Rat lo = (Rat(1) - eps) * (Rat(1) - eps);
        Rat hi = (Rat(1) + eps) * (Rat(1) + eps);
        if (ratio < lo || ratio > hi) {
            fail(rep, "sqrt approximation outside the relative band",
                 Json{{"x", x.str()}, {"eps", eps.str()}, {"r", r.str()}});
        }
    }

    // Monotonicity of approx_exp in x, up to 2*eps relative slack.
    for (long t = 0; t < std::min<long>(trials, 300); ++t) {
        ++rep.trials;
        Rat x1(rng.range(0, 50), 100);
        Rat x2 = x1 + Rat(rng.range(1, 49), 100);
        Rat eps(1, rng.range(10, 100000));
        Rat r1 = approx_exp(x1, eps);
        Rat r2 = approx_exp(x2, eps);
        if (r1 > r2 * (Rat(1) + 2 * eps)) {
            fail(rep, "exp approximation is not monotone within the slack",
                 Json{{"x1", x1.str()}, {"x2", x2.str()}, {"eps", eps.str()}});
        }
    }

    // Worked values against a long Taylor prefix.
    {
        ++rep.trials;
        Rat r = approx_exp(Rat(0), Rat(1, 1000));
        if ((r - Rat(1)).abs() > Rat(1, 1000)) fail(rep, "exp(0) drifts from 1", Json{{"r", r.str()}});

        auto check = [&](const Rat& x, const Rat& eps) {
            Rat r2 = approx_exp(x, eps);
            auto oracle = oracles::taylor_exp_oracle(x, 60);
            // Sufficient exact checks against the enclosure: passing these
            // certifies (1 +- eps) relative to the true value.
            if (r2 < (Rat(1) - eps) * oracle.hi || r2 > (Rat(1) + eps) * oracle.lo) {
                fail(rep, "exp approximation outside the oracle band", Json{{"x", x.str()}, {"eps", eps.str()}});
            }
        };
        check(Rat(1), Rat(1, 1000000));
        check(Rat(1, 2), Rat(1, 1000000000L));
    }

    // Canonical-form closure under arithmetic.
    for (long t = 0; t < std::min<long>(trials, 500); ++t) {
        ++rep.trials;
        Rat a(rng.range(-50, 50), rng.range(1, 30));
        Rat b(rng.range(-50, 50), rng.range(1, 30));
        for (const Rat& r : {a + b, a - b, a * b, b.is_zero() ? a : a / b}) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
            if (g != 1 || r.den() < 1) {
                fail(rep, "arithmetic result is not canonical", Json{{"value", r.str()}});
            }
        }
    }
}

void suite_gridtiling_core(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 100;
    Rng rng(seed);

    for (int k = 3; k <= 6; ++k) {
        ++rep.trials;
        auto pairs = adjacency_pairs(k);
        if (static_cast<int>(pairs.size()) != 2 * k * k) {
            fail(rep, "adjacency count is not 2k^2", Json{{"k", k}, {"count", pairs.size()}});
        }
        std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> seen;
        for (const auto& e : pairs) {
            std::pair<int, int> c1{wrap(e.i1, k), wrap(e.j1, k)};
            std::pair<int, int> c2{wrap(e.i2, k), wrap(e.j2, k)};
            if (c2 < c1) std::swap(c1, c2);
            if (!seen.insert({c1, c2}).second) fail(rep, "duplicate unordered adjacency", Json{{"k", k}});
        }
    }

    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        int k = static_cast<int>(rng.range(3, 4));
        auto [inst, plant] = random_gridtiling_planted(rng, k, 3, 2);
        int cons = consistency(inst, plant);
        if (cons != 2 * k * k) fail(rep, "planted assignment is not fully consistent");
        // Random valid assignment: canonical count vs the independent scan.
        GtAssignment sigma = GtAssignment::empty(k);
        for (int j = 1; j <= k; ++j)
            for (int i = 1; i <= k; ++i) {
                const auto& cell = inst.cell(i, j);
                sigma.at(i, j) = cell[rng.below(cell.size())];
            }
        int c1 = consistency(inst, sigma);
        auto counts = oracles::consistency_counts(inst, sigma);
        if (c1 != counts.consistent) {
            fail(rep, "consistency disagrees with the pairwise scan",
                 Json{{"instance", to_json(inst)}, {"sigma", to_json(sigma)}, {"canonical", c1},
                      {"scan", counts.consistent}});
        }
        if (counts.consistent + counts.inconsistent != 2 * k * k) {
            fail(rep, "consistent and inconsistent pairs do not partition the adjacencies",
                 Json{{"instance", to_json(inst)}});
        }
        if (c1 < 0 || c1 > 2 * k * k) fail(rep, "consistency outside [0, 2k^2]");
    }

    // BCSP: evaluation recount, completeness of the reduction, round-trip.
    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        int k = static_cast<int>(rng.range(3, 4));
        int n = static_cast<int>(rng.range(2, 3));
        auto [inst, psi] = random_bcsp_planted(rng, k, n, 80, 2);
        if (bcsp_eval(inst, psi) != Rat(1)) fail(rep, "planted assignment does not satisfy the instance");
        std::vector<int> random_psi(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) random_psi[static_cast<size_t>(i)] = static_cast<int>(rng.range(1, n));
        if (bcsp_eval(inst, random_psi) != oracles::bcsp_eval_scan(inst, random_psi)) {
            fail(rep, "bcsp evaluation disagrees with the pairwise scan", to_json(inst));
        }

        GridTilingInstance gt = bcsp_to_gridtiling(inst);
        GtAssignment sigma = GtAssignment::empty(k);
        for (int j = 1; j <= k; ++j)
            for (int i = 1; i <= k; ++i)
                sigma.at(i, j) = IntPair{psi[static_cast<size_t>(i - 1)], psi[static_cast<size_t>(j - 1)]};
        if (consistency(gt, sigma) != 2 * k * k) {
            fail(rep, "satisfying assignment does not map to a perfect tiling", to_json(inst));
        }
    }

    // Unsatisfiable fixture: the derived grid has optimum strictly below 2k^2.
    {
        ++rep.trials;
        BcspInstance tri;
        tri.k = 3;
        tri.n = 2;
        tri.constraints[{1, 2}] = {{1, 2}};
        tri.constraints[{1, 3}] = {{1, 2}};
        tri.constraints[{2, 3}] = {{1, 2}};
        GridTilingInstance gt = bcsp_to_gridtiling(tri);
        if (gt_bruteforce(gt).opt >= 18) fail(rep, "unsatisfiable fixture still tiles perfectly");
    }
}

void suite_arrowhead_closedform(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 100;
    Rng rng(seed);

    // Symbolic product form of the reduction's Gram minors, evaluated with
    // oracle-precision surrogates for e^x. Minors without the hub must match
    // exactly; minors with the hub within the surrogate precision.
    mpz_class p30, p20;
    mpz_ui_pow_ui(p30.get_mpz_t(), 10, 30);
    mpz_ui_pow_ui(p20.get_mpz_t(), 10, 20);
    Rat p(mpz_class(1), p30);
    Rat tol(mpz_class(1), p20);
    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        int n = static_cast<int>(rng.range(2, 5));
        std::vector<mpz_class> xs;
        mpz_class total(0);
        for (int i = 0; i < n; ++i) {
            long v = rng.range(1, 8);
            xs.emplace_back(v);
            total += v;
        }
        if (total < 2) { --t; --rep.trials; continue; }
        mpz_class t_int(rng.range(1, mpz_class(total - 1).get_si()));
        KSumInstance inst = ksum_normalize(xs, t_int, std::min(2, n));

        Rat one_t = Rat(1) + inst.t;
        std::vector<Rat> ex(static_cast<size_t>(n));
        Matrix a(n + 1);
        a.at(0, 0) = Rat(25);
        for (int i = 1; i <= n; ++i) {
            ex[static_cast<size_t>(i - 1)] = approx_exp(inst.x[static_cast<size_t>(i - 1)], p);
            a.at(i, i) = one_t * ex[static_cast<size_t>(i - 1)];
            Rat s = approx_sqrt(inst.x[static_cast<size_t>(i - 1)] * ex[static_cast<size_t>(i - 1)], p);
            a.at(0, i) = Rat(5) * s;
            a.at(i, 0) = a.at(0, i);
        }

        IndexSet s_noh = random_subset(rng, 1, n);
        Rat d_noh = det(principal_submatrix(a, s_noh.shifted(1)));
        Rat f_noh(1);
        for (int i : s_noh) f_noh *= one_t * ex[static_cast<size_t>(i - 1)];
        if (d_noh != f_noh) {
            fail(rep, "hub-free minor differs from the product form", Json{{"subset", s_noh.values()}});
        }

        std::vector<int> with_hub = s_noh.values();
        with_hub.insert(with_hub.begin(), 0);
        IndexSet s_hub(with_hub);
        Rat d_hub = det(principal_submatrix(a, s_hub.shifted(1)));
        Rat sum_x;
        for (int i : s_noh) sum_x += inst.x[static_cast<size_t>(i - 1)];
        Rat formula = Rat::pow(one_t, s_noh.size()) * Rat(25) * (Rat(1) - sum_x / one_t);
        for (int i : s_noh) formula *= ex[static_cast<size_t>(i - 1)];
        if ((d_hub - formula).abs() > tol * formula.abs() + tol) {
            fail(rep, "hub minor drifts from the product form",
                 Json{{"subset", s_hub.values()}, {"det", d_hub.str()}, {"formula", formula.str()}});
        }
    }

    // Reduction output structure and the worked yes/no pair.
    {
        ++rep.trials;
        KSumInstance yes = ksum_normalize({1, 2, 3}, 3, 2);  // 1/6 + 1/3 = 1/2
        ArrowheadReductionOutput out = ksum_to_arrowhead(yes);
        if (!is_arrowhead(out.b.m)) fail(rep, "reduction output is not arrowhead");
        for (int i = 1; i < out.b.order(); ++i) {
            if (out.b.m.at(i, i) <= 0) fail(rep, "reduction diagonal is not positive");
        }
        if (!(out.sound_hi < out.theta && out.theta < out.complete_lo)) {
            fail(rep, "threshold is not strictly between its certificates");
        }
        if (maxdet_bruteforce(out.b, out.kk).value < out.theta) {
            fail(rep, "yes-instance determinant falls below the threshold");
        }
    }
    {
        ++rep.trials;
        // x = (1/6, 1/3, 1/2), t = 5/12 is not a 2-subset sum: scale by 12.
        KSumInstance no = ksum_normalize({2, 4, 6}, 5, 2);
        ArrowheadReductionOutput out = ksum_to_arrowhead(no);
        if (maxdet_bruteforce(out.b, out.kk).value >= out.theta) {
            fail(rep, "no-instance determinant reaches the threshold");
        }
    }
}

void suite_ortho_reduction(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 12;
    Rng rng(seed);

    // Structural inner products on the worked grid.
    {
        ++rep.trials;
        GridTilingInstance inst = grid3x4_fixture();
        OrthoReductionOutput out = gridtiling_to_orthovectors(inst);
        int k = inst.k;
        auto adjacent1 = [k](int a, int b) {
            int d = std::abs(a - b);
            return d == 1 || d == k - 1;
        };
        for (int a = 0; a < out.vectors.n(); ++a) {
            for (int b = a + 1; b < out.vectors.n(); ++b) {
                const VectorLabel& la = out.labels[static_cast<size_t>(a)];
                const VectorLabel& lb = out.labels[static_cast<size_t>(b)];
                Rat ip = inner(out.vectors.vectors[static_cast<size_t>(a)],
                               out.vectors.vectors[static_cast<size_t>(b)]);
                if (la.i == lb.i && la.j == lb.j) {
                    if (ip <= 0) fail(rep, "same-cell product is not positive");
                } else if (la.i == lb.i && adjacent1(la.j, lb.j)) {
                    if ((la.x == lb.x) != ip.is_zero()) fail(rep, "vertical adjacency orthogonality mismatch");
                } else if (la.j == lb.j && adjacent1(la.i, lb.i)) {
                    if ((la.y == lb.y) != ip.is_zero()) fail(rep, "horizontal adjacency orthogonality mismatch");
                } else if (!ip.is_zero()) {
                    fail(rep, "non-adjacent cells are not orthogonal");
                }
            }
        }
    }

    // Decision agreement with the exhaustive tiling search, plus the
    // equal-norm corollary maxdet = 4^(k^2) iff an orthogonal set exists.
    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        GridTilingInstance inst = random_gridtiling(rng, 3, 3, 1);
        // A couple of extra options keep both outcomes reachable.
        for (int extra = 0; extra < 3; ++extra) {
            int i = static_cast<int>(rng.range(1, 3)), j = static_cast<int>(rng.range(1, 3));
            IntPair p{static_cast<int>(rng.range(1, 3)), static_cast<int>(rng.range(1, 3))};
            auto& cell = inst.cells[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)];
            if (std::find(cell.begin(), cell.end(), p) == cell.end()) cell.push_back(p);
        }
        OrthoReductionOutput out = gridtiling_to_orthovectors(inst);
        bool tiles = gt_bruteforce(inst).opt == 18;
        bool ortho = find_orthogonal_set(out.vectors, out.kk).has_value();
        if (tiles != ortho) {
            fail(rep, "orthogonal-set decision disagrees with the tiling search", to_json(inst));
        }
        for (const auto& vec : out.vectors.vectors) {
            if (inner(vec, vec) != Rat(4)) fail(rep, "reduction vector norm is not 4");
        }
        if (out.vectors.n() <= 13) {
            Rat maxdet = maxdet_bruteforce(gram(out.vectors), out.kk).value;
            bool at_cap = maxdet == Rat::pow(Rat(4), out.kk);
            if (at_cap != ortho) fail(rep, "equal-norm determinant cap mismatch", to_json(inst));
        }
    }
}

void suite_gap_reduction(VerificationReport& rep, long trials, uint64_t seed) {
    if (trials == 0) trials = 3;
    Rng rng(seed);

    // Completeness: planted instances give maxdet exactly 1 after scaling.
    for (long t = 0; t < trials; ++t) {
        ++rep.trials;
        auto [inst, plant] = random_gridtiling_planted(rng, 3, 3, 1);
        for (int extra = 0; extra < 4; ++extra) {
            int i = static_cast<int>(rng.range(1, 3)), j = static_cast<int>(rng.range(1, 3));
            IntPair p{static_cast<int>(rng.range(1, 3)), static_cast<int>(rng.range(1, 3))};
            auto& cell = inst.cells[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)];
            if (std::find(cell.begin(), cell.end(), p) == cell.end()) cell.push_back(p);
        }
        DetMaxReductionOutput out = gridtiling_to_detmax(inst);
        if (maxdet_bruteforce(out.a_tilde, out.kk).value != Rat(1)) {
            fail(rep, "planted instance does not reach determinant 1", to_json(inst));
        }
    }

    // Inner-product structure after scaling: diagonal 1, same-cell in
    // {1/2, 3/4}, adjacent in {0, 1/8}, other entries 0.
    {
        ++rep.trials;
        GridTilingInstance inst = grid3x4_fixture();
        DetMaxReductionOutput out = gridtiling_to_detmax(inst);
        int k = inst.k;
        auto adjacent1 = [k](int a, int b) {
            int d = std::abs(a - b);
            return d == 1 || d == k - 1;
        };
        for (int a = 0; a < out.a_tilde.order(); ++a) {
            if (out.a_tilde.m.at(a, a) != Rat(1)) fail(rep, "scaled diagonal is not 1");
            for (int b = a + 1; b < out.a_tilde.order(); ++b) {
                const VectorLabel& la = out.labels[static_cast<size_t>(a)];
                const VectorLabel& lb = out.labels[static_cast<size_t>(b)];
                Rat ip = out.a_tilde.m.at(a, b);
                if (la.i == lb.i && la.j == lb.j) {
                    if (ip != Rat(1, 2) && ip != Rat(3, 4)) {
                        fail(rep, "same-cell scaled product outside {1/2, 3/4}", Json{{"value", ip.str()}});
                    }
                } else if ((la.i == lb.i && adjacent1(la.j, lb.j)) || (la.j == lb.j && adjacent1(la.i, lb.i))) {
                    if (!ip.is_zero() && ip != Rat(1, 8)) {
                        fail(rep, "adjacent-cell scaled product outside {0, 1/8}", Json{{"value", ip.str()}});
                    }
                } else if (!ip.is_zero()) {
                    fail(rep, "distant cells have a nonzero product", Json{{"value", ip.str()}});
                }
            }
        }
    }

    // Soundness fixture: optimum 16 out of 18 forces maxdet <= 0.999^2.
    // (On a 3x3 torus single-break optima like 17 cannot occur: breaks come
    // in twos or threes per row/column cycle.)
    {
        ++rep.trials;
        GridTilingInstance inst;
        inst.k = 3;
        inst.n = 4;
        inst.cells.assign(3, std::vector<std::vector<IntPair>>(3));
        for (int j = 1; j <= 3; ++j)
            for (int i = 1; i <= 3; ++i)
                inst.cells[static_cast<size_t>(j - 1)][static_cast<size_t>(i - 1)] = {{i, j}};
        inst.cells[0][0] = {{4, 1}};                  // breaks the first column twice
        inst.cells[1][1].push_back({4, 4});           // decoys that never help
        inst.cells[2][2].push_back({1, 1});
        inst.validate();

        GtSolveResult solved = gt_bruteforce(inst);
        if (solved.opt != 16) {
            fail(rep, "soundness fixture optimum is not 16", Json{{"opt", solved.opt}});
        } else {
            DetMaxReductionOutput out = gridtiling_to_detmax(inst);
            Rat maxdet = maxdet_bruteforce(out.a_tilde, out.kk).value;
            int incons = 2 * inst.k * inst.k - solved.opt;
            Rat bound = Rat::pow(Rat(999, 1000), incons);
            if (maxdet > bound) {
                fail(rep, "soundness fixture exceeds the decay bound",
                     Json{{"maxdet", maxdet.str()}, {"bound", bound.str()}});
            }
        }
    }
}

void suite_pythagorean(VerificationReport& rep, long trials, uint64_t) {
    if (trials == 0) trials = 50;
    ++rep.trials;
    auto triples = pythagorean_triples(static_cast<int>(trials));
    if (triples[0].a != 3 || triples[0].b != 4 || triples[0].c != 5) {
        fail(rep, "first triple is not (3,4,5)");
    }
    if (trials >= 2 && (triples[1].a != 5 || triples[1].b != 12 || triples[1].c != 13)) {
        fail(rep, "second triple is not (5,12,13)");
    }
    for (const auto& tr : triples) {
        ++rep.trials;
        mpz_class a(tr.a), b(tr.b), c(tr.c);
        if (a * a + b * b != c * c) {
            fail(rep, "not a Pythagorean triple", Json{{"a", tr.a}, {"b", tr.b}, {"c", tr.c}});
        }
        mpz_class g1, g2, g3;
        mpz_gcd(g1.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_gcd(g2.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
        mpz_gcd(g3.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
        if (g1 != 1 || g2 != 1 || g3 != 1) {
            fail(rep, "triple components are not pairwise coprime", Json{{"a", tr.a}, {"b", tr.b}, {"c", tr.c}});
        }
    }
}

const std::vector<std::pair<std::string, Suite>>& suites() {
    static const std::vector<std::pair<std::string, Suite>> s = {
        {"golden-vectors", suite_golden_vectors},
        {"golden-grid", suite_golden_grid},
        {"ksum-endtoend", suite_ksum_endtoend},
        {"gadget-identities", suite_gadget_identities},
        {"additive-rounding", suite_additive_rounding},
        {"block-approx", suite_block_approx},
        {"volume-accounting", suite_volume_accounting},
        {"oracle-equivalence", suite_oracle_equivalence},
        {"greedy-bound", suite_greedy_bound},
        {"rational-approx", suite_rational_approx},
        {"gridtiling-core", suite_gridtiling_core},
        {"arrowhead-closedform", suite_arrowhead_closedform},
        {"ortho-reduction", suite_ortho_reduction},
        {"gap-reduction", suite_gap_reduction},
        {"pythagorean", suite_pythagorean},
    };
    return s;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : suites()) names.push_back(name);
    return names;
}

VerificationReport run_suite(const std::string& name, long trials, uint64_t seed) {
    for (const auto& [sname, fn] : suites()) {
        if (sname == name) {
            VerificationReport rep;
            rep.suite = name;
            auto start = std::chrono::steady_clock::now();
            fn(rep, trials, seed);
            rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return rep;
        }
    }
    throw std::invalid_argument("unknown verification suite: \"" + name + "\"");
}

}  // namespace detmax
