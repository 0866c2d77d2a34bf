#pragma once

#include <cstdint>
#include <random>

namespace detmax {

/// All randomness in the project flows through this wrapper around the
/// standard-specified mt19937_64 stream, so identical seeds give identical
/// results on every platform. Distribution helpers are hand-rolled because
/// std::uniform_int_distribution is implementation-defined.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    /// Uniform in [0, bound), unbiased via rejection.
    uint64_t below(uint64_t bound) {
        if (bound == 0) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform in [lo, hi], inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1) != 0; }

private:
    std::mt19937_64 eng_;
};

}  // namespace detmax
