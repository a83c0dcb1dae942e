#pragma once

#include <cstdint>

namespace signphon {

// Deterministic 64-bit generator (splitmix64).  The output sequence depends
// only on the seed, never on the platform or standard library, so seeded
// simulations and generated fixtures stay byte-for-byte reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n).  Modulo bias is below 2^-53 for any n that fits
  // in a fixture, which is far below anything the statistical checks resolve.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace signphon
