#pragma once

#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qssamp/pointer.hpp"

namespace qssamp {

/// Default pointer-register copy count ceil(log2(4/eps)).
int default_copies(double eps);

enum class ProtocolMode { kExactConditional, kSampled };

struct FilterOptions {
  int window = 0;
  ProtocolMode mode = ProtocolMode::kExactConditional;
  std::uint64_t seed = 0;
  long max_attempted_rounds = 1'000'000;
  double t_scale = 1.0;  // t_per_round = t_scale / gap_estimate
};

/// Diagnostics for one filtering stage.
struct StageReport {
  double input_overlap_sq = 0.0;   // |<u_0 | input>|^2
  double output_overlap_sq = 0.0;  // |<u_0 | output>|^2
  double t_per_round = 0.0;
  int copies = 0;
  long rounds_attempted = 0;  // includes sampled-mode restarts
  std::vector<double> round_probabilities;  // conditional, accepted rounds only
  double success_prob = 1.0;   // product of the accepted rounds' probabilities
  double evolution_time = 0.0; // attempted rounds x t_per_round
  long restarts = 0;
  double leakage = 0.0;        // residual off-target probability at output
};

/// Runs `copies` rounds of evolve(t = t_scale / gap_estimate) followed by
/// post-selection on x = 0 and a pointer reset. gap_estimate is measured on
/// the Hamiltonian scale; the exact value is hamiltonian_gap(model). copies
/// <= 0 selects the default derived from eps. In sampled mode a rejected
/// post-selection restarts the stage from the input state and every attempted
/// round counts toward the evolution time.
std::pair<VectorXcd, StageReport> filter_stage(const HamiltonianModel& model,
                                               const VectorXcd& psi, double eps,
                                               double gap_estimate, int copies,
                                               const PointerRegister& pointer,
                                               const FilterOptions& options = {});

struct ProtocolConfig {
  double eps = 0.05;
  /// Interpolation parameter used in place of s*; nullopt = resolve s* from
  /// the exact stationary distribution (oracle-assisted).
  std::optional<double> s_prime;
  /// User-supplied chain-gap estimates Delta(s') and Delta; nullopt = exact.
  std::optional<double> gap_stage1;
  std::optional<double> gap_stage2;
  int copies_stage1 = 0;  // 0 = ceil(log2(4/eps))
  int copies_stage2 = 0;
  int pointer_size = 0;   // 0 = smallest admissible power of two
  double dx = 1.0;
  int window = 0;
  ProtocolMode mode = ProtocolMode::kExactConditional;
  std::uint64_t seed = 0;
  double t_scale = 1.0;
};

struct ProtocolResult {
  VectorXcd final_state;
  double fidelity_sq = 0.0;    // |<sqrt(pi) | final>|^2
  double success_prob = 1.0;   // product of all post-selection probabilities
  double total_evolution_time = 0.0;
  double leakage = 0.0;
  double s_prime_used = 0.0;
  bool oracle_assisted_s = false;
  int pointer_size = 0;
  double chain_gap_stage1 = 0.0;  // estimates actually used
  double chain_gap_stage2 = 0.0;
  double hamiltonian_gap_stage1 = 0.0;
  double hamiltonian_gap_stage2 = 0.0;
  double stage1_overlap_interp_sq = 0.0;  // |<sqrt(pi(s')) | stage-1 output>|^2
  StageReport stage1;
  StageReport stage2;
};

/// Two-stage preparation of sqrt(pi): stage 1 filters the basis state |j>
/// toward the zero-eigenvector of H(s'), stage 2 filters that output toward
/// the zero-eigenvector of H. Requires a reversible ergodic chain.
ProtocolResult run_protocol(const MarkovChain& chain, int j, const ProtocolConfig& config);

nlohmann::json stage_to_json(const StageReport& stage);
nlohmann::json result_to_json(const ProtocolResult& result);

}  // namespace qssamp
