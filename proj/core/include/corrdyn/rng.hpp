#pragma once

#include <cstddef>
#include <cstdint>

namespace corrdyn {

/// Deterministic 64-bit generator used for every seeded sampling routine.
/// State advances by 0x9E3779B97F4A7C15; output is finalized with the
/// shift-xor-multiply constants 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB
/// (SplitMix64). Streams depend only on the seed, never on the platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) {
    std::size_t i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace corrdyn
