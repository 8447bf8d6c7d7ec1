#pragma once

#include <cstdint>
#include <random>

namespace mdep {

/// Seed used when the caller does not pick one.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives an independent root seed for a sub-experiment (e.g. one entry of an n-list).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t label) noexcept;

/// Engine for substream `stream` of `root`.
///
/// Each replica of a Monte Carlo run owns one substream, keyed by its index,
/// so the draws a replica sees do not depend on which worker runs it or in
/// what order.
std::mt19937_64 substream(std::uint64_t root, std::uint64_t stream);

/// Uniform on the open interval (0,1), 53 random bits.
inline double uniform01(std::mt19937_64& eng) {
    // (k + 0.5) / 2^53 never hits 0 or 1
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal by Box-Muller; no cached state so replay is trivially exact.
double standard_normal(std::mt19937_64& eng);

}  // namespace mdep
