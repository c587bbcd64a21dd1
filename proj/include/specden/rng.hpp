#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace specden {

// Counter-based random numbers: every draw is a pure function of
// (seed, counter), so a logical vector can be generated shard-by-shard in
// any layout and still come out bit-identical. A sequential generator
// (mt19937 etc.) cannot give that property, which is why none is used here.
//
// The mixer is the splitmix64 finalizer, which passes BigCrush as a
// stateless hash of the counter.

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t keyed_counter(std::uint64_t seed, std::uint64_t counter) {
  // Feed the seed through the mixer first so nearby seeds decorrelate.
  return mix64(mix64(seed) ^ counter * 0x9e3779b97f4a7c15ull);
}

// Uniform in the open interval (0, 1): top 53 bits plus half an ulp so the
// value is never exactly 0 (log() below needs that) and never exactly 1.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(keyed_counter(seed, counter) >> 11) * 0x1p-53 + 0x1p-54;
}

// Standard normal via Box-Muller on counters (2i, 2i+1). Deterministic and
// layout-invariant: element i of a probe vector always uses the same pair.
inline double gaussian(std::uint64_t seed, std::uint64_t i) {
  double u1 = uniform01(seed, 2 * i);
  double u2 = uniform01(seed, 2 * i + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// +1 or -1 with equal probability.
inline double rademacher(std::uint64_t seed, std::uint64_t i) {
  return (keyed_counter(seed, i) & 1ull) ? 1.0 : -1.0;
}

// Uniform integer in [0, n) without modulo bias worth worrying about at
// the n values used here (column picks, class labels).
inline std::uint64_t uniform_index(std::uint64_t seed, std::uint64_t i, std::uint64_t n) {
  return keyed_counter(seed, i) % n;
}

}  // namespace specden
