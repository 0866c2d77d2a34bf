#include "detmax/rational.hpp"

#include <ostream>

namespace detmax {

Rat::Rat(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
}

Rat::Rat(long n, long d) : Rat(mpz_class(n), mpz_class(d)) {}

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    mpz_class n, d;
    try {
        if (slash == std::string::npos) {
            n = mpz_class(s);
            d = 1;
        } else {
            n = mpz_class(s.substr(0, slash));
            d = mpz_class(s.substr(slash + 1));
        }
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: \"" + s + "\"");
    }
    if (d == 0) throw std::invalid_argument("malformed rational (zero denominator): \"" + s + "\"");
    Rat r(n, d);
    if (r.str() != s) throw std::invalid_argument("non-canonical rational: \"" + s + "\"");
    return r;
}

std::string Rat::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rat Rat::abs() const {
    Rat r;
    r.q_ = ::abs(q_);
    return r;
}

Rat Rat::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rat(den(), num());
}

mpz_class Rat::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
    return q;
}

mpz_class Rat::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
    return q;
}

Rat Rat::operator-() const {
    Rat r;
    r.q_ = -q_;
    return r;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat Rat::pow(const Rat& base, long e) {
    if (e < 0) return pow(base.inv(), -e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);  // canonical in, canonical out
}

namespace {

// Snaps a value to a dyadic point inside [lo, hi] (lo <= hi). Keeps later
// denominator growth in check: downstream Gram matrices stay near-dyadic.
Rat dyadic_in(const Rat& lo, const Rat& hi) {
    if (lo == hi) return lo;
    Rat width = hi - lo;
    // Smallest p with 2^-p <= width guarantees a grid point in [lo, hi].
    unsigned long p = 1;
    {
        Rat w = width;
        Rat half(1, 2);
        Rat step = half;
        while (step > w) {
            step *= half;
            ++p;
            if (p > 1u << 24) throw std::logic_error("dyadic_in: width underflow");
        }
    }
    mpz_class two_p;
    mpz_ui_pow_ui(two_p.get_mpz_t(), 2, p);
    Rat scaled = hi * Rat(two_p);
    return Rat(scaled.floor(), two_p);
}

}  // namespace

Rat approx_exp(const Rat& x, const Rat& eps) {
    if (x < 0 || x > 1) throw std::domain_error("approx_exp: x must lie in [0,1]");
    if (eps <= 0 || eps >= 1) throw std::domain_error("approx_exp: eps must lie in (0,1)");

    // Partial sums of sum x^m/m!. Stop once term <= (eps/4)*partial and at
    // least the x^4/4! term was added; then the true remainder is at most
    // 2*term (in fact term/m for x <= 1), so e^x lies in [sum, sum + 2*term].
    Rat sum(1);
    Rat term(1);
    long m = 0;
    Rat bound = eps / 4;
    while (true) {
        ++m;
        term *= x / Rat(m);
        sum += term;
        if (m >= 4 && term <= bound * sum) break;
        if (m > 100000) throw std::logic_error("approx_exp: no convergence");
    }
    return dyadic_in(sum, sum + 2 * term);
}

Rat approx_sqrt(const Rat& x, const Rat& eps) {
    if (x <= 0) throw std::domain_error("approx_sqrt: x must be positive");
    if (eps <= 0 || eps >= 1) throw std::domain_error("approx_sqrt: eps must lie in (0,1)");

    // Exact square: return the exact root.
    if (mpz_perfect_square_p(x.num().get_mpz_t()) && mpz_perfect_square_p(x.den().get_mpz_t())) {
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), x.num().get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), x.den().get_mpz_t());
        return Rat(rn, rd);
    }

    // Bisection on [min(x,1), max(x,1)], carried out on the integer grid
    // Z / 2^p so bracket endpoints stay dyadic. (a/2^p)^2 <= x is tested as
    // a^2 * den(x) <= num(x) * 4^p, all in exact integers.
    Rat lo_r = x < 1 ? x : Rat(1);
    Rat hi_r = x < 1 ? Rat(1) : x;

    unsigned long p = 16;
    {
        // Enough resolution for the relative stop rule: eps * sqrt(x) >> 2^-p.
        size_t eps_bits = mpz_sizeinbase(eps.inv().ceil().get_mpz_t(), 2);
        size_t xq_bits = 0;
        if (x < 1) {
            mpz_class q = x.inv().ceil();
            xq_bits = mpz_sizeinbase(q.get_mpz_t(), 2) / 2 + 1;
        }
        p = static_cast<unsigned long>(eps_bits + xq_bits) + 8;
    }

    for (int attempt = 0; attempt < 64; ++attempt) {
        mpz_class two_p;
        mpz_ui_pow_ui(two_p.get_mpz_t(), 2, p);
        mpz_class four_p = two_p * two_p;
        mpz_class rhs = x.num() * four_p;  // compare a^2 * den <= rhs

        mpz_class a = (lo_r * Rat(two_p)).floor();
        mpz_class b = (hi_r * Rat(two_p)).ceil();
        if (a < 0) a = 0;

        auto sq_le = [&](const mpz_class& v) { return v * v * x.den() <= rhs; };

        // Invariant: (a/2^p) <= sqrt(x) <= (b/2^p).
        while (b - a > 1) {
            // Relative stop: (b-a)/2^p <= eps * (a/2^p), i.e. b-a <= eps*a.
            if (a > 0 && Rat(b - a) <= eps * Rat(a)) break;
            mpz_class mid = (a + b) / 2;
            if (sq_le(mid)) {
                a = mid;
            } else {
                b = mid;
            }
        }
        if (a > 0 && Rat(b - a) <= eps * Rat(a)) {
            // a/2^p <= sqrt(x) <= b/2^p and width <= eps * a/2^p, so the lower
            // endpoint is a certified (1 +- eps)-approximation.
            return Rat(a, two_p);
        }
        p *= 2;  // not enough resolution; retry finer
    }
    throw std::logic_error("approx_sqrt: no convergence");
}

}  // namespace detmax
