#pragma once

#include <cstdint>

namespace zipshift {

/*
 * Deterministic 64-bit generator: splitmix64 (Vigna's public-domain reference
 * sequence). Every randomized driver in the library routes all of its draws
 * through this type from one explicit seed, so a (config, seed) pair fully
 * determines a run. Bounded draws use plain modulo reduction; the reduction
 * rule is part of the reproducibility contract, and the modulo bias is
 * irrelevant at the ranges used here (n << 2^64).
 */
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Independent substream for trial `index` (per-trial seeds).
    Rng child(std::uint64_t index) const {
        Rng r(state ^ (0x9E3779B97F4A7C15ull * (index + 1)));
        r.next();
        return r;
    }
};

}  // namespace zipshift
