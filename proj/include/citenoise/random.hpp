#pragma once

#include <cstdint>
#include <initializer_list>

namespace citenoise::rng {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream: the draw for a given (seed, path) never depends on
/// how many other draws were made, so results are identical whether trials
/// run in parallel or in sequence.
constexpr std::uint64_t hash(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(seed);
  for (auto p : path) h = mix64(h ^ mix64(p ^ 0x6a09e667f3bcc909ULL));
  return h;
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double uniform(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  return static_cast<double>(hash(seed, path) >> 11) * 0x1.0p-53;
}

/// Uniform double in [-half_width, half_width).
constexpr double centered(std::uint64_t seed, std::initializer_list<std::uint64_t> path,
                          double half_width) noexcept {
  return (2.0 * uniform(seed, path) - 1.0) * half_width;
}

// Stream tags.
inline constexpr std::uint64_t kAccurate = 1;
inline constexpr std::uint64_t kAuthorOffset = 2;
inline constexpr std::uint64_t kInteraction = 3;
inline constexpr std::uint64_t kFlip = 4;
inline constexpr std::uint64_t kAggregate = 5;
inline constexpr std::uint64_t kTrial = 6;

}  // namespace citenoise::rng
