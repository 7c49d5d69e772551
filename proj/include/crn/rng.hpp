#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace crn {

// splitmix64, used to derive independent sub-seeds from one master seed so that
// adding a consumer does not shift the draws of another.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [0,1) built from the top 53 bits of the engine output.
// Avoids std::uniform_real_distribution so results do not depend on the
// standard library implementation.
inline double rand_u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). n must be >= 1.
inline std::size_t rand_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rand_u01(rng) * static_cast<double>(n));
}

// Exponential variate with the given rate.
inline double rand_exp(std::mt19937_64& rng, double rate) {
    double u = rand_u01(rng);
    // u == 0 would give log(0); nudge into (0,1).
    if (u <= 0.0) u = 0x1.0p-53;
    return -std::log(1.0 - u) / rate;
}

}  // namespace crn
