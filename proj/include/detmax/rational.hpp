#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace detmax {

/// Thrown when an input is rejected because it would exceed a configured
/// resource bound (as opposed to being malformed). CLI maps this to exit 3.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rational scalar. Always canonical: gcd(|num|, den) = 1, den >= 1.
/// All arithmetic is exact; there is no implicit rounding anywhere.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}          // NOLINT: implicit on purpose
    Rat(int n) : q_(n) {}           // NOLINT
    Rat(const mpz_class& n) : q_(n) {}
    Rat(const mpz_class& n, const mpz_class& d);
    Rat(long n, long d);

    /// Parses the canonical "p/q" (or "p") base-10 encoding. Rejects
    /// non-canonical input such as "2/4", "4/2", "1/0" or "-1/-2".
    static Rat parse(const std::string& s);

    /// Canonical "p/q" string; "p" when the denominator is 1.
    std::string str() const;

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rat abs() const;
    Rat inv() const;

    /// Largest integer <= value / smallest integer >= value.
    mpz_class floor() const;
    mpz_class ceil() const;

    Rat operator-() const;
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

    /// r^e for integer e (e < 0 requires r != 0).
    static Rat pow(const Rat& base, long e);

private:
    mpq_class q_;
};

/// (1 +- eps)-relative approximation of e^x for x in [0,1], via Taylor
/// partial sums with an exact remainder certificate. The certificate is
/// remainder <= 2 * last_term once last_term <= (eps/4) * partial_sum and
/// at least 5 terms were summed. Result is > 0 and exact output of the
/// certified interval (no floating point is involved anywhere).
Rat approx_exp(const Rat& x, const Rat& eps);

/// (1 +- eps)-relative approximation of sqrt(x) for x > 0 by bisection on
/// the bracket [min(x,1), max(x,1)]. Exact rational square roots are
/// returned exactly. Iteration count is O(log eps^-1 + log max(x, 1/x)).
Rat approx_sqrt(const Rat& x, const Rat& eps);

}  // namespace detmax
