#pragma once

#include <cstdint>
#include <random>

#include "cubelsh/errors.hpp"

namespace cubelsh {

/// SplitMix64 step (Steele/Lea/Vigna). Used for seed expansion and stream splitting.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random source: a 64-bit Mersenne Twister (std::mt19937_64, fully
/// specified by the C++ standard) seeded through SplitMix64. All value extraction
/// (uniform doubles, bounded integers, Bernoulli draws) is implemented here rather
/// than via std::*_distribution, so sequences are reproducible bit-for-bit across
/// standard libraries and platforms.
///
/// split() hands out an independent child stream; child seeds are consecutive
/// SplitMix64 outputs of the parent seed, so a (seed, split index) pair fully
/// determines every stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), splitter_(seed) {
        std::uint64_t s = seed;
        engine_.seed(splitmix64(s));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw InvalidArgument("next_below: bound must be positive");
        if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

    /// True with probability p. p <= 0 is never, p >= 1 is always.
    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Independent child stream, deterministic in (parent seed, call order).
    Rng split() { return Rng(splitmix64(splitter_)); }

private:
    std::uint64_t seed_;
    std::uint64_t splitter_;
    std::mt19937_64 engine_;
};

} // namespace cubelsh
