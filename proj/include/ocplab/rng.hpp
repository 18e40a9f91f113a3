#pragma once

#include <cstdint>

namespace ocplab {

/// SplitMix64. Used for all sampled loops: seeding by (seed, index) keeps
/// results independent of iteration order and worker count.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : state(seed * 0x9E3779B97F4A7C15ull + stream) {
        next();
    }

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace ocplab
