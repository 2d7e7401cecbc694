#pragma once

#include <cstdint>

namespace riskgrad {

// SplitMix64 generator. Chosen over std::mt19937 + std distributions because
// the standard leaves distribution output unspecified; this keeps seeded runs
// bit-identical across compilers and platforms.
class Rng {
  std::uint64_t state_;

public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with full 53-bit mantissa resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    // Rejection sampling over the top bits; bias-free.
    std::uint64_t threshold = (0ULL - n) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }
};

// Stateless mix for deriving independent streams (run seed, iteration,
// trajectory index) without sharing generator state across workers.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
  Rng r(a * 0x9e3779b97f4a7c15ULL ^ (b + 0x7f4a7c15ULL) ^ (c << 1));
  r.next_u64();
  return r.next_u64();
}

} // namespace riskgrad
