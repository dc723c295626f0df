#pragma once

#include <cstdint>
#include <random>

#include "sqc/geometry.hpp"

namespace sqc {

/// Seeded random source with a platform-independent mapping to doubles.
/// std::mt19937_64 output is fully specified by the standard; the bit
/// mapping below avoids std::uniform_real_distribution, whose results
/// are implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is fine here; n is tiny relative to 2^64.
    return engine_() % n;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace sqc
