#include "salbench/rng.hpp"

#include <cmath>
#include <numbers>

namespace salbench {

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::string_view> keys) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_byte = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix_byte(static_cast<unsigned char>(seed >> (8 * i)));
  for (std::string_view key : keys) {
    mix_byte(0x1f);
    for (char c : key) mix_byte(static_cast<unsigned char>(c));
  }
  return splitmix64(h);
}

double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace salbench
