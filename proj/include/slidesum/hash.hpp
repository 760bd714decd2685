// hash.hpp -- invertible 64-bit mixing (the murmur3 fmix64 finalizer).
#pragma once

#include <cstdint>

namespace slidesum {

namespace detail {

// Inverse of an odd multiplier modulo 2^64 by Newton iteration; each step
// doubles the number of correct low bits, starting from 3 (a*a == 1 mod 8).
constexpr std::uint64_t mul_inverse(std::uint64_t a) {
  std::uint64_t inv = a;
  for (int i = 0; i < 5; ++i) inv *= 2 - a * inv;
  return inv;
}

inline constexpr std::uint64_t kMix1 = 0xFF51AFD7ED558CCDULL;
inline constexpr std::uint64_t kMix2 = 0xC4CEB9FE1A85EC53ULL;
inline constexpr std::uint64_t kMix1Inv = mul_inverse(kMix1);
inline constexpr std::uint64_t kMix2Inv = mul_inverse(kMix2);

static_assert(kMix1 * kMix1Inv == 1 && kMix2 * kMix2Inv == 1);

}  // namespace detail

constexpr std::uint64_t hash64(std::uint64_t x) {
  x ^= x >> 33;
  x *= detail::kMix1;
  x ^= x >> 33;
  x *= detail::kMix2;
  x ^= x >> 33;
  return x;
}

// x ^= x >> 33 is its own inverse: the shifted-in half never overlaps the
// bits it came from.
constexpr std::uint64_t unhash64(std::uint64_t y) {
  y ^= y >> 33;
  y *= detail::kMix2Inv;
  y ^= y >> 33;
  y *= detail::kMix1Inv;
  y ^= y >> 33;
  return y;
}

}  // namespace slidesum
