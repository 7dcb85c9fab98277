#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace salbench {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable across platforms and runs: FNV-1a over the seed bytes and each key,
/// finished with splitmix64.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::string_view> keys) noexcept;

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Uniform integer in [0, n). std::uniform_int_distribution is not specified
/// bit-for-bit across standard libraries, so sampling goes through here.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r < threshold);
  return r % n;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Box-Muller; one variate per call so the stream consumption is predictable.
double standard_normal(Rng& rng);

}  // namespace salbench
