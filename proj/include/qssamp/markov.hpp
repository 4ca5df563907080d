#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qssamp/errors.hpp"

namespace qssamp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Tolerance on |row sum - 1| accepted by chain validation.
inline constexpr double kRowSumTol = 1e-9;

/// Result of the structural ergodicity checks (exact integer procedures on
/// the positive-entry adjacency graph; no floating-point heuristics).
struct ErgodicityReport {
  bool irreducible = false;
  bool aperiodic = false;
  bool ergodic() const { return irreducible && aperiodic; }
};

ErgodicityReport check_ergodicity(const Matrix& P);

enum class ErgodicityPolicy {
  kRequire,  // throw NotErgodicError when a check fails
  kAllow,    // record the outcome in the ergodic flag
};

/// Immutable row-stochastic transition matrix with validated metadata.
/// All free functions below are pure; values are safe to share across threads.
class MarkovChain {
 public:
  /// Validates entries in [0,1], row sums within kRowSumTol of 1, and (under
  /// kRequire) ergodicity. With renormalize_rows the rows are rescaled to sum
  /// exactly to 1 instead of being rejected; off by default.
  static MarkovChain validate(Matrix P,
                              ErgodicityPolicy policy = ErgodicityPolicy::kRequire,
                              bool renormalize_rows = false,
                              std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(P_.rows()); }
  const Matrix& transition() const { return P_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool ergodic() const { return ergodic_; }

 private:
  MarkovChain(Matrix P, std::vector<std::string> labels, bool ergodic)
      : P_(std::move(P)), labels_(std::move(labels)), ergodic_(ergodic) {}

  Matrix P_;
  std::vector<std::string> labels_;
  bool ergodic_;
};

/// Chain eigenvalues sorted descending by absolute value. For reversible
/// chains the values come from the symmetric discriminant and eigenvectors is
/// the orthonormal eigenbasis of that matrix; otherwise the values are the
/// magnitudes reported by a general eigensolver (lower confidence,
/// from_discriminant = false) and eigenvectors is empty.
struct Spectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
  bool from_discriminant = false;
};

struct ChainStatistics {
  Vector pi;
  double delta = 0.0;
  long t_mix = 0;
  double t_hit = 0.0;
  double eps_mix = 0.0;
  int target_j = 0;
  bool reversible = false;
};

enum class StationaryMethod { kPowerIteration, kLinearSolve };

/// Stationary distribution of an ergodic chain; pi = P^T pi within 1e-10.
/// kLinearSolve solves (P^T - I) pi = 0 with the normalization row appended
/// and is the reference route; kPowerIteration iterates pi <- P^T pi.
Vector stationary_distribution(const MarkovChain& chain,
                               StationaryMethod method = StationaryMethod::kLinearSolve,
                               long max_iterations = 1'000'000);

/// Detailed-balance predicate: |pi_i P_ij - pi_j P_ji| <= tol for all i, j.
bool is_reversible(const MarkovChain& chain, const Vector& pi, double tol);

Spectrum chain_spectrum(const MarkovChain& chain);

/// Delta = |lambda_1| - |lambda_2| in (0, 1].
double spectral_gap(const MarkovChain& chain);

/// Smallest t with max_x TV(row x of P^t, pi) <= eps_mix, by iterated
/// multiplication. eps_mix in (0,1).
long mixing_time(const MarkovChain& chain, double eps_mix, long cap = 10'000'000);

/// Expected steps to first reach j from a pi-distributed start (states already
/// at j contribute 0). Solves (I - P_minor) h = 1 over states != j.
double hitting_time(const MarkovChain& chain, int j);

/// Reversed chain P̂_ij = pi_j P_ji / pi_i; stochastic with the same pi.
MarkovChain time_reverse(const MarkovChain& chain, const Vector& pi);

/// (I + P) / 2: same stationary distribution, eigenvalues mapped into [0,1].
MarkovChain lazify(const MarkovChain& chain);

enum class ChainFamily {
  kTwoState,
  kCycleLazy,
  kComplete,
  kBirthDeath,
  kRandomReversible,
};

ChainFamily family_from_name(std::string_view name);
std::string family_name(ChainFamily family);

struct FamilyParams {
  std::optional<double> p;
  std::optional<double> q;
};

/// Deterministic in seed; every output is ergodic and (except where the
/// family documentation says otherwise) reversible.
MarkovChain gen_family(ChainFamily family, int n, std::uint64_t seed,
                       const FamilyParams& params = {});

/// Full classical summary used by the analyze command.
ChainStatistics analyze_chain(const MarkovChain& chain, double eps_mix, int target_j);

}  // namespace qssamp
