// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace hetnet {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; spreads consecutive integers over the full word.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for one unit of work, a pure function of (seed, index)
/// so results do not depend on which thread runs the unit.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

/// Uniform draw on (0, 1].
inline double uniform_open0(Rng& rng) {
  return 1.0 - std::generate_canonical<double, 64>(rng);
}

}  // namespace hetnet
