#pragma once

#include <cstdint>

namespace forage {

/// Finalizer with full avalanche (splitmix64's output stage).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Counter-based draw keyed by (seed, stream, counter): the value depends only
/// on the key, never on call order, so agent moves can be computed in any
/// order or thread count with identical results.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ (stream + 0x9e3779b97f4a7c15ull));
  h = mix64(h ^ (counter + 0xbf58476d1ce4e5b9ull));
  return h;
}

/// Uniform double in [0,1) from the top 53 bits.
inline double u01(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

}  // namespace forage
