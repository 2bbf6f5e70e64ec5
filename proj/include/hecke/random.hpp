#pragma once

#include <cstdint>
#include <random>

namespace hecke {

/// SplitMix64 step; used to derive independent per-sample seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Generator for sample i of a run seeded with seed, independent of scheduling.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t i, std::uint64_t stream = 0) {
  return std::mt19937_64(splitmix64(splitmix64(seed ^ (stream * 0x632be59bd9b4e019ull)) + i));
}

/// Uniform double in [0, 1) from the top 53 bits; std::uniform_real_distribution is not
/// specified bit-for-bit across standard libraries.
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

}  // namespace hecke
