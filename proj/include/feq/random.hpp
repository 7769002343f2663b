#pragma once

// Seeded deterministic randomness for campaigns and property tests. Draws
// avoid std::uniform_int_distribution, whose output is implementation
// defined; everything here is reproducible across platforms.

#include "feq/gallery.hpp"
#include "feq/rational.hpp"

#include <cstdint>

namespace feq {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0x6a09e667f3bcc908ULL)) {}

    std::uint64_t next() {
        state_ = splitmix64(state_);
        return state_;
    }

    // uniform in [lo, hi], modulo draw (bias negligible for our ranges)
    long long next_in(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // rational with |numerator| <= max_num, 1 <= denominator <= max_den
    Rational next_rational(long long max_num, long long max_den) {
        long long n = next_in(-max_num, max_num);
        long long d = next_in(1, max_den);
        return Rational(Int(n), Int(d));
    }

    Rational next_nonzero_rational(long long max_num, long long max_den) {
        for (;;) {
            Rational r = next_rational(max_num, max_den);
            if (!r.is_zero()) return r;
        }
    }

private:
    std::uint64_t state_;
};

// Independent stream for (seed, suite, trial) triples.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t suite, std::uint64_t trial) {
    return splitmix64(splitmix64(seed + 0x100 * suite) ^ splitmix64(trial + 1));
}

} // namespace feq
