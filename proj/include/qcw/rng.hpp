#pragma once

#include <cstdint>
#include <random>

namespace qcw {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based per-trial stream derivation: trial i of a run seeded with
// `root` always sees the same stream, independent of scheduling order.
inline Rng trial_rng(std::uint64_t root, std::uint64_t trial) {
    return Rng(splitmix64(root ^ splitmix64(trial + 1)));
}

// Uniform integer in [0, n) for bignum-free callers.
inline std::uint64_t uniform_u64(Rng& rng, std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
    return d(rng);
}

} // namespace qcw
