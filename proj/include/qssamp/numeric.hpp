#pragma once

#include <cmath>

namespace qssamp {

/// Ceiling with a snap to the nearest integer when the argument is within
/// 1e-9 of one, so quantities like log2(8) = 2.9999999999999996 round to the
/// mathematically exact value before the ceiling is taken.
inline double guarded_ceil(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-9) return nearest;
  return std::ceil(x);
}

}  // namespace qssamp
