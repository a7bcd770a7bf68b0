#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <random>

namespace georoute {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class Stream : std::uint64_t { World = 1, Routing = 2 };

/// Seed for one (master, density, trial, stream) cell. Independent of the
/// order in which cells are visited.
inline std::uint64_t derive_seed(std::uint64_t master, double density, std::uint64_t trial, Stream stream,
                                 std::uint64_t salt = 0) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(density + 0.0));
  h = splitmix64(h ^ trial);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return splitmix64(h ^ salt);
}

/// mt19937_64 with distribution code written out so streams do not depend
/// on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool bernoulli(double p) { return uniform01() < p; }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace georoute
