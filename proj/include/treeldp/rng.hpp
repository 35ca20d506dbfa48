#pragma once

#include <cstdint>
#include <random>

namespace treeldp {

// All randomness in the library flows through this wrapper around
// std::mt19937_64. Uniform variates are built from the raw 64-bit output
// (never through distribution adapters, whose results vary across standard
// libraries), so a seed pins every sample bit-exactly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1), 53 random bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

/// SplitMix64 step; used to derive independent per-block seeds from a base
/// seed and a block counter.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for parallel block `block` of a run seeded with `base`.
inline std::uint64_t block_seed(std::uint64_t base, std::uint64_t block) {
    return splitmix64(base + 0x9e3779b97f4a7c15ULL * (block + 1));
}

}  // namespace treeldp
