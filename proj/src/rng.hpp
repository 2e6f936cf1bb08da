#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace zkd {

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per work item: the seed for item i never depends on
// which thread runs it or in what order.
inline std::mt19937_64 CellRng(std::uint64_t seed, std::uint64_t cell) {
  return std::mt19937_64(SplitMix64(SplitMix64(seed) ^ SplitMix64(cell + 0x632be59bd9b4e019ULL)));
}

// Uniform double in [0, 1) from the top 53 bits; unlike the std
// distributions this is the same on every standard library.
inline double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * Uniform01(rng);
}

// Integer in [lo, hi].
inline std::int64_t UniformInt(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

// Box-Muller standard normal.
inline double Normal(std::mt19937_64& rng) {
  double u = Uniform01(rng);
  while (u <= 0.0) u = Uniform01(rng);
  const double v = Uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

}  // namespace zkd
