#pragma once

#include <cstdint>
#include <random>

namespace rlsa {

// std::mt19937_64 output is fixed by the standard; the distributions in
// <random> are not, so the helpers below define every draw bit-exactly.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer. Used to spread user seeds and to derive
/// independent per-chain / per-instance streams.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of sub-stream `index` under `master`: splitmix64(splitmix64(master) ^ index).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ index);
}

inline Engine make_engine(std::uint64_t seed) { return Engine(splitmix64(seed)); }

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = Engine::max() - Engine::max() % bound;
  std::uint64_t r = eng();
  while (r >= limit) r = eng();
  return r % bound;
}

/// Fair coin from the top bit of one engine output.
inline bool coin(Engine& eng) { return (eng() >> 63) != 0; }

}  // namespace rlsa
