// Seeded random streams.
//
// Every stochastic routine takes an explicit 64-bit seed and derives its
// generator through make_stream().  Independent substreams (one per shot,
// one per ensemble member) come from derive_seed(seed, index), which mixes
// seed + (index+1)*golden-gamma through the SplitMix64 finalizer.  The rule
// is part of the output contract: serial and parallel runs that use the
// same (seed, index) pairs produce identical draws.

#pragma once

#include <cstdint>
#include <random>

namespace ionpulse {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Substream seed for the index-th independent consumer of a base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

inline std::mt19937_64 make_stream(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

inline double uniform01(std::mt19937_64& g) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(g);
}

}  // namespace ionpulse
