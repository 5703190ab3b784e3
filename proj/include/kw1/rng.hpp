#pragma once

#include <cstdint>
#include <random>

namespace kw1 {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent streams from one user seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// std::uniform_int_distribution is implementation-defined; reports must be
// byte-identical across standard libraries, so reduce the raw engine output.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

}  // namespace kw1
