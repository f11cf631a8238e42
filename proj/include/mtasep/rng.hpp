#pragma once

#include <cmath>
#include <cstdint>

namespace mtasep {

// Deterministic splitmix64 generator. The standard library engines are
// deterministic too, but its distributions are not pinned across
// implementations; this one is fully specified, so identical seeds give
// identical output everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) via rejection (bound > 0).
  std::uint64_t bounded(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Exponential waiting time with the given rate.
  double exponential(double rate) { return -std::log1p(-real01()) / rate; }

  // Derived stream seed (trial splitting): deterministic in (seed, index).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return g.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace mtasep
