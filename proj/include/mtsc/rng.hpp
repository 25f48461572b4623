#pragma once

#include <cstdint>
#include <random>

namespace mtsc {

// Deterministic helpers over mt19937_64. std::uniform_*_distribution output is
// implementation-defined, so seeded runs would not be portable through it;
// these are.

/// Uniform integer in [0, n). n must be > 0.
inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

/// Uniform integer in [lo, hi] inclusive.
inline std::int64_t rng_range(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double rng_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Derives an independent stream seed from a master seed and a stream index
/// (splitmix64 finalizer). Used so per-tree / per-member RNGs are stable under
/// any parallel schedule.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace mtsc
