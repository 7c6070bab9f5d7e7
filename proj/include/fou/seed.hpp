#pragma once

#include <cstdint>
#include <random>

namespace fou {

/// Engine behind every sampler. mt19937_64 is fully specified by the standard,
/// so a seed reproduces the same stream on every platform.
using Engine = std::mt19937_64;

/// SplitMix64 output function (Steele, Lea & Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of sub-stream `stream` under `master`: the (stream+1)-th output of a
/// SplitMix64 generator whose state starts at `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return mix64(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b) noexcept {
    return derive_seed(derive_seed(master, a), b);
}

} // namespace fou
