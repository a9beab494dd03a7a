#pragma once

#include <cstdint>
#include <random>

namespace canfis {

/// Seeded random source. Uniform draws are derived from the raw 64-bit engine
/// output rather than std::uniform_real_distribution, whose algorithm is
/// implementation-defined, so a seed yields the same stream on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

  std::uint64_t bits() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

}  // namespace canfis
