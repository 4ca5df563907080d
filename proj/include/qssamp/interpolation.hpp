#pragma once

#include <optional>

#include "qssamp/markov.hpp"

namespace qssamp {

/// P' = P with row j replaced by the indicator of j (absorbing self-loop).
MarkovChain absorbing_variant(const MarkovChain& chain, int j);

/// P(s) = (1-s) P + s P', entrywise. Ergodic for s < 1 when P is ergodic;
/// the s = 1 endpoint is representable but downstream stationary and gap
/// queries reject it.
MarkovChain interpolate(const MarkovChain& P, const MarkovChain& P_prime, double s);

/// s* = 1 - pi_j / (1 - pi_j). Lands in (0,1) iff pi_j in (0, 1/2); values of
/// pi_j in [1/2, 1) are accepted but flagged through *outside_open_interval.
double s_star(double pi_j, bool* outside_open_interval = nullptr);

/// Closed-form stationary distribution of the j-absorbing interpolation:
///   pi_j(s) = pi_j / (1 - s (1 - pi_j)),
///   pi_x(s) = pi_x (1 - s) / (1 - s (1 - pi_j)) for x != j.
/// Requires a reversible ergodic chain and s in [0, 1).
Vector interpolated_stationary(const MarkovChain& chain, int j, double s);

/// Parameters of one interpolation instance; s_star is present iff
/// pi_j in (0, 1/2).
struct InterpolationSpec {
  MarkovChain base;
  int target_j;
  double s;
  std::optional<double> s_star;
};

InterpolationSpec make_interpolation_spec(const MarkovChain& chain, int j, double s);

}  // namespace qssamp
