#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace kgapp {

// Library-wide engine. Distributions below are hand-rolled so sequences do
// not depend on the standard library implementation.
using Rng = std::mt19937_64;

// Uniform integer in [0, n) by rejection sampling.
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % n);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double UniformReal(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Derives an independent stream seed, e.g. per stage or per start vertex.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view tag);

}  // namespace kgapp
