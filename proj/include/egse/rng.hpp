#pragma once

#include <cstdint>
#include <random>

namespace egse {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Pure integer arithmetic, so derived seeds are stable
// across compilers and platforms.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// seed_t = mix64(base ^ mix64(t)). Used for per-trial seeds so that trial t
// sees the same stream no matter which thread runs it or in what order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base ^ mix64(index));
}

// Independent sub-streams of one experiment seed.
enum class Stream : std::uint64_t {
  catalog_layout = 1,
  riv_init = 2,
  planting = 3,
  explore = 4,
  clicks = 5,
};

inline Rng make_rng(std::uint64_t seed, Stream stream) {
  return Rng{derive_seed(seed, 0xE65E000000000000ULL | static_cast<std::uint64_t>(stream))};
}

}  // namespace egse
