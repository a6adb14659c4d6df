#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "chpp/phase.hpp"

// Distribution helpers over std::mt19937_64 written out by hand: the standard
// distributions are implementation-defined, and seeded outputs here must be
// byte-identical across toolchains.
namespace chpp::rng {

/// Unbiased integer in [0, bound).
inline std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

/// Uniform double in [0, 1).
inline double unit_real(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller.
inline double gaussian(std::mt19937_64& gen) {
  double u1 = unit_real(gen);
  while (u1 <= 0.0) u1 = unit_real(gen);
  const double u2 = unit_real(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace chpp::rng
