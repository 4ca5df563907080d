#include "qssamp/protocol.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "qssamp/interpolation.hpp"
#include "qssamp/numeric.hpp"
#include "qssamp/rng.hpp"

namespace qssamp {

int default_copies(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw RangeError("eps must lie in (0,1)");
  return static_cast<int>(guarded_ceil(std::log(4.0 / eps) / std::log(2.0)));
}

std::pair<VectorXcd, StageReport> filter_stage(const HamiltonianModel& model,
                                               const VectorXcd& psi, double eps,
                                               double gap_estimate, int copies,
                                               const PointerRegister& pointer,
                                               const FilterOptions& options) {
  if (!(gap_estimate > 0.0)) {
    throw NonPositiveGapError("gap estimate must be positive");
  }
  if (psi.size() != model.size()) {
    throw DimensionMismatchError("state length does not match Hamiltonian dimension");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw NotNormalizedError("filter input state is not normalized");
  }
  if (copies <= 0) copies = default_copies(eps);

  const double t = options.t_scale / gap_estimate;
  if (pointer.size() * pointer.dx() <= 2.0 * t) {
    throw BadSizeError("pointer lattice violates L dx > 2 t; displacements would wrap");
  }

  const Vector u0 = model.zero_eigenvector();
  const auto overlap_sq = [&](const VectorXcd& v) {
    return std::norm(u0.cast<std::complex<double>>().dot(v));
  };

  StageReport report;
  report.copies = copies;
  report.t_per_round = t;
  report.input_overlap_sq = overlap_sq(psi);
  if (report.input_overlap_sq < 1e-24) {
    throw ZeroProbabilityError(
        "input state has no overlap with the zero-eigenvector; "
        "post-selection cannot converge");
  }

  SeededRng rng(options.seed);
  VectorXcd current = psi;
  std::vector<double> accepted_probs;
  int round = 0;
  while (round < copies) {
    if (report.rounds_attempted >= options.max_attempted_rounds) {
      throw IterationCapError("filter stage exceeded the attempted-round cap");
    }
    JointState joint = JointState::product(current, pointer);
    joint = evolve(model, joint, t);
    auto [collapsed, probability] = postselect_zero(joint, options.window);
    ++report.rounds_attempted;

    if (options.mode == ProtocolMode::kSampled && rng.uniform() >= probability) {
      // Rejected: restart the stage from the input state.
      current = psi;
      accepted_probs.clear();
      round = 0;
      ++report.restarts;
      continue;
    }
    current = collapsed;
    accepted_probs.push_back(probability);
    ++round;
  }

  report.round_probabilities = std::move(accepted_probs);
  report.success_prob = 1.0;
  for (double p : report.round_probabilities) report.success_prob *= p;
  report.evolution_time = static_cast<double>(report.rounds_attempted) * t;
  report.output_overlap_sq = overlap_sq(current);
  report.leakage = std::max(0.0, 1.0 - report.output_overlap_sq);
  return {current, report};
}

namespace {

int auto_pointer_size(double max_t, double dx) {
  int L = 8;
  while (L * dx <= 2.0 * max_t) {
    if (L > (1 << 26)) {
      throw BadSizeError("required pointer lattice is impractically large");
    }
    L *= 2;
  }
  return L;
}

}  // namespace

ProtocolResult run_protocol(const MarkovChain& chain, int j, const ProtocolConfig& config) {
  const int n = chain.size();
  if (j < 0 || j >= n) throw IndexError("target state index out of range");
  if (!(config.eps > 0.0 && config.eps < 1.0)) throw RangeError("eps must lie in (0,1)");
  if (!chain.ergodic()) {
    throw NotErgodicError("run_protocol requires an ergodic chain", false, false);
  }
  const Vector pi = stationary_distribution(chain);
  if (!is_reversible(chain, pi, 1e-9)) {
    throw NotReversibleError("run_protocol requires a reversible chain");
  }

  ProtocolResult result;
  if (config.s_prime) {
    result.s_prime_used = *config.s_prime;
    result.oracle_assisted_s = false;
    if (!(result.s_prime_used >= 0.0 && result.s_prime_used < 1.0)) {
      throw RangeError("s' must lie in [0,1)");
    }
  } else {
    if (!(pi(j) > 0.0 && pi(j) < 0.5)) {
      throw NoValidJError("pi_j = " + std::to_string(pi(j)) +
                          " is not in (0, 1/2); s* is undefined for this state");
    }
    result.s_prime_used = s_star(pi(j));
    result.oracle_assisted_s = true;
  }

  const MarkovChain interp =
      interpolate(chain, absorbing_variant(chain, j), result.s_prime_used);
  const HamiltonianModel h_interp =
      build_hamiltonian(discriminant(interp), "interpolated chain");
  const HamiltonianModel h_base = build_hamiltonian(discriminant(chain), "base chain");

  result.chain_gap_stage1 = config.gap_stage1.value_or(spectral_gap(interp));
  result.chain_gap_stage2 = config.gap_stage2.value_or(spectral_gap(chain));
  result.hamiltonian_gap_stage1 = chain_gap_to_evolution_gap(result.chain_gap_stage1);
  result.hamiltonian_gap_stage2 = chain_gap_to_evolution_gap(result.chain_gap_stage2);

  const double t1 = config.t_scale / result.hamiltonian_gap_stage1;
  const double t2 = config.t_scale / result.hamiltonian_gap_stage2;
  const int L = config.pointer_size > 0
                    ? config.pointer_size
                    : auto_pointer_size(std::max(t1, t2), config.dx);
  const PointerRegister pointer(L, config.dx);
  if (L * config.dx <= 2.0 * std::max(t1, t2)) {
    throw BadSizeError("pointer lattice violates L dx > 2 t for the requested gaps");
  }
  result.pointer_size = L;

  FilterOptions stage_options;
  stage_options.window = config.window;
  stage_options.mode = config.mode;
  stage_options.t_scale = config.t_scale;

  VectorXcd state = VectorXcd::Zero(n);
  state(j) = 1.0;

  stage_options.seed = config.seed;
  auto [mid, stage1] = filter_stage(h_interp, state, config.eps,
                                    result.hamiltonian_gap_stage1,
                                    config.copies_stage1, pointer, stage_options);
  result.stage1 = stage1;

  const Vector sqrt_pi_s =
      interpolated_stationary(chain, j, result.s_prime_used).cwiseSqrt();
  result.stage1_overlap_interp_sq =
      std::norm(sqrt_pi_s.cast<std::complex<double>>().dot(mid));

  stage_options.seed = config.seed ^ 0x9e3779b97f4a7c15ULL;
  auto [final_state, stage2] = filter_stage(h_base, mid, config.eps,
                                            result.hamiltonian_gap_stage2,
                                            config.copies_stage2, pointer, stage_options);
  result.stage2 = stage2;
  result.final_state = final_state;

  const Vector sqrt_pi = pi.cwiseSqrt();
  result.fidelity_sq = std::norm(sqrt_pi.cast<std::complex<double>>().dot(final_state));
  result.success_prob = stage1.success_prob * stage2.success_prob;
  result.total_evolution_time = stage1.evolution_time + stage2.evolution_time;
  result.leakage = stage2.leakage;
  return result;
}

nlohmann::json stage_to_json(const StageReport& stage) {
  return nlohmann::json{
      {"input_overlap_sq", stage.input_overlap_sq},
      {"output_overlap_sq", stage.output_overlap_sq},
      {"t_per_round", stage.t_per_round},
      {"copies", stage.copies},
      {"rounds_attempted", stage.rounds_attempted},
      {"restarts", stage.restarts},
      {"round_probabilities", stage.round_probabilities},
      {"success_prob", stage.success_prob},
      {"evolution_time", stage.evolution_time},
      {"leakage", stage.leakage},
  };
}

nlohmann::json result_to_json(const ProtocolResult& result) {
  std::vector<double> real(result.final_state.size());
  std::vector<double> imag(result.final_state.size());
  for (Eigen::Index i = 0; i < result.final_state.size(); ++i) {
    real[i] = result.final_state(i).real();
    imag[i] = result.final_state(i).imag();
  }
  return nlohmann::json{
      {"fidelity_sq", result.fidelity_sq},
      {"success_prob", result.success_prob},
      {"total_evolution_time", result.total_evolution_time},
      {"leakage", result.leakage},
      {"s_prime", result.s_prime_used},
      {"oracle_assisted_s", result.oracle_assisted_s},
      {"pointer_size", result.pointer_size},
      {"chain_gap_stage1", result.chain_gap_stage1},
      {"chain_gap_stage2", result.chain_gap_stage2},
      {"hamiltonian_gap_stage1", result.hamiltonian_gap_stage1},
      {"hamiltonian_gap_stage2", result.hamiltonian_gap_stage2},
      {"stage1_overlap_interp_sq", result.stage1_overlap_interp_sq},
      {"stage1", stage_to_json(result.stage1)},
      {"stage2", stage_to_json(result.stage2)},
      {"final_state_real", real},
      {"final_state_imag", imag},
  };
}

}  // namespace qssamp
