#include "qssamp/interpolation.hpp"

#include <cmath>

namespace qssamp {

MarkovChain absorbing_variant(const MarkovChain& chain, int j) {
  const int n = chain.size();
  if (j < 0 || j >= n) throw IndexError("absorbing state index out of range");
  Matrix P = chain.transition();
  P.row(j).setZero();
  P(j, j) = 1.0;
  return MarkovChain::validate(std::move(P), ErgodicityPolicy::kAllow,
                               /*renormalize_rows=*/false, chain.labels());
}

MarkovChain interpolate(const MarkovChain& P, const MarkovChain& P_prime, double s) {
  if (P.size() != P_prime.size()) {
    throw DimensionMismatchError("interpolation endpoints have different dimensions");
  }
  if (!(s >= 0.0 && s <= 1.0)) throw RangeError("interpolation parameter s must lie in [0,1]");
  Matrix M = (1.0 - s) * P.transition() + s * P_prime.transition();
  return MarkovChain::validate(std::move(M), ErgodicityPolicy::kAllow,
                               /*renormalize_rows=*/false, P.labels());
}

double s_star(double pi_j, bool* outside_open_interval) {
  if (!(pi_j > 0.0 && pi_j < 1.0)) throw RangeError("pi_j must lie in (0,1)");
  if (outside_open_interval != nullptr) *outside_open_interval = pi_j >= 0.5;
  return 1.0 - pi_j / (1.0 - pi_j);
}

Vector interpolated_stationary(const MarkovChain& chain, int j, double s) {
  const int n = chain.size();
  if (j < 0 || j >= n) throw IndexError("target state index out of range");
  if (!(s >= 0.0 && s < 1.0)) {
    throw RangeError("interpolated stationary distribution requires s in [0,1); "
                     "P(1) is not ergodic");
  }
  if (!chain.ergodic()) {
    throw NotErgodicError("interpolated_stationary requires an ergodic chain", false, false);
  }
  const Vector pi = stationary_distribution(chain);
  if (!is_reversible(chain, pi, 1e-9)) {
    throw NotReversibleError("interpolated_stationary requires a reversible chain");
  }

  const double pj = pi(j);
  const double denom = 1.0 - s * (1.0 - pj);
  Vector out(n);
  for (int x = 0; x < n; ++x) {
    out(x) = (x == j) ? pj / denom : pi(x) * (1.0 - s) / denom;
  }
  return out;
}

InterpolationSpec make_interpolation_spec(const MarkovChain& chain, int j, double s) {
  const int n = chain.size();
  if (j < 0 || j >= n) throw IndexError("target state index out of range");
  if (!(s >= 0.0 && s <= 1.0)) throw RangeError("interpolation parameter s must lie in [0,1]");
  InterpolationSpec spec{chain, j, s, std::nullopt};
  const Vector pi = stationary_distribution(chain);
  if (pi(j) > 0.0 && pi(j) < 0.5) {
    spec.s_star = s_star(pi(j));
  }
  return spec;
}

}  // namespace qssamp
