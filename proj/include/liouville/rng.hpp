#pragma once

#include <cstdint>
#include <random>

#include "liouville/scalar.hpp"

namespace liouville {

/// All seeded randomness goes through one generator algorithm: the 64-bit
/// Mersenne Twister (mt19937_64). Bounded draws below use plain modulo
/// reduction so that a given seed replays identically everywhere.
using Rng = std::mt19937_64;

/// Derive an independent stream for sub-task `index` of a run seeded with
/// `seed` (SplitMix64 step on the mixed pair).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

/// Uniform draw from {0, 1, ..., n-1}.
inline std::uint64_t next_below(Rng& rng, std::uint64_t n) { return rng() % n; }

/// Uniform integer in [lo, hi], inclusive.
inline long next_int(Rng& rng, long lo, long hi) {
    return lo + static_cast<long>(next_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Random rational with numerator in [-num_bound, num_bound] and denominator
/// in [1, den_bound].
inline Rational random_rational(Rng& rng, long num_bound = 8, long den_bound = 4) {
    return rational(next_int(rng, -num_bound, num_bound), next_int(rng, 1, den_bound));
}

/// Random nonzero rational with the same bounds.
inline Rational random_nonzero_rational(Rng& rng, long num_bound = 8, long den_bound = 4) {
    for (;;) {
        Rational q = random_rational(rng, num_bound, den_bound);
        if (q != 0) return q;
    }
}

/// Uniform double in [lo, hi) from 53 random bits.
inline double next_real(Rng& rng, double lo = -1.0, double hi = 1.0) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

/// Random scalar of the requested field, bounded around unit scale.
template <ScalarField S>
S random_scalar(Rng& rng) {
    if constexpr (is_rational_v<S>) {
        return random_rational(rng);
    } else {
        return next_real(rng, -2.0, 2.0);
    }
}

}  // namespace liouville
