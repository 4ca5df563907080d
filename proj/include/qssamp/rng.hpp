#pragma once

#include <cstdint>
#include <random>

namespace qssamp {

/// Deterministic uniform source. mt19937_64 output is fixed by the standard,
/// and the [0,1) mapping below avoids the implementation-defined
/// std::uniform_real_distribution, so streams are identical across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qssamp
