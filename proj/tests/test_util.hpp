#pragma once

#include <cstdint>
#include <random>

namespace numfrac::test {

// One fixed seed for every randomized suite so failures replay exactly.
inline constexpr std::uint64_t kSeed = 0x5eed2009;

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) {
    return std::mt19937_64{kSeed ^ salt};
}

inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t hi_inclusive) {
    return std::uniform_int_distribution<std::uint64_t>{0, hi_inclusive}(rng);
}

} // namespace numfrac::test
