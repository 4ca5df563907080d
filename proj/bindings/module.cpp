// Python bindings for the core operations: chain analysis, interpolation,
// the spectral Hamiltonian, the pointer-measurement protocol, and the cost
// formulas. Matrices cross the boundary as numpy arrays via Eigen.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "qssamp/chain_io.hpp"
#include "qssamp/cost.hpp"
#include "qssamp/interpolation.hpp"
#include "qssamp/markov.hpp"
#include "qssamp/protocol.hpp"

namespace py = pybind11;
using namespace qssamp;

namespace {

MarkovChain chain_from(const Matrix& P) { return MarkovChain::validate(P); }

MarkovChain chain_any(const Matrix& P) {
  return MarkovChain::validate(P, ErgodicityPolicy::kAllow);
}

py::dict stage_dict(const StageReport& stage) {
  py::dict d;
  d["input_overlap_sq"] = stage.input_overlap_sq;
  d["output_overlap_sq"] = stage.output_overlap_sq;
  d["t_per_round"] = stage.t_per_round;
  d["copies"] = stage.copies;
  d["rounds_attempted"] = stage.rounds_attempted;
  d["restarts"] = stage.restarts;
  d["round_probabilities"] = stage.round_probabilities;
  d["success_prob"] = stage.success_prob;
  d["evolution_time"] = stage.evolution_time;
  d["leakage"] = stage.leakage;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qssamp, m) {
  m.doc() = "Analog stationary-state preparation: simulator and cost model";

  py::register_exception<NoValidJError>(m, "NoValidJError", PyExc_ValueError);
  py::register_exception<NotErgodicError>(m, "NotErgodicError", PyExc_ValueError);
  py::register_exception<NotReversibleError>(m, "NotReversibleError", PyExc_ValueError);
  static py::exception<Error> base_error(m, "QssampError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NoValidJError&) {
      throw;  // handled by the registrations above
    } catch (const NotErgodicError&) {
      throw;
    } catch (const NotReversibleError&) {
      throw;
    } catch (const RangeError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const IndexError& e) {
      PyErr_SetString(PyExc_IndexError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(base_error.ptr(), e.what());
    }
  });

  m.def("validate_chain",
        [](const Matrix& P) {
          const MarkovChain chain = chain_from(P);
          return py::make_tuple(chain.transition(), chain.ergodic());
        },
        py::arg("P"),
        "Validate a row-stochastic matrix; returns (P, ergodic) or raises.");

  m.def("gen_family",
        [](const std::string& family, int n, std::uint64_t seed,
           std::optional<double> p, std::optional<double> q) {
          FamilyParams params;
          params.p = p;
          params.q = q;
          return gen_family(family_from_name(family), n, seed, params).transition();
        },
        py::arg("family"), py::arg("n"), py::arg("seed") = 0,
        py::arg("p") = std::nullopt, py::arg("q") = std::nullopt);

  m.def("stationary_distribution",
        [](const Matrix& P, const std::string& method) {
          const StationaryMethod m_ = method == "power-iteration"
                                          ? StationaryMethod::kPowerIteration
                                          : StationaryMethod::kLinearSolve;
          return stationary_distribution(chain_from(P), m_);
        },
        py::arg("P"), py::arg("method") = "linear-solve");

  m.def("is_reversible",
        [](const Matrix& P, const Vector& pi, double tol) {
          return is_reversible(chain_any(P), pi, tol);
        },
        py::arg("P"), py::arg("pi"), py::arg("tol") = 1e-9);

  m.def("spectral_gap", [](const Matrix& P) { return spectral_gap(chain_from(P)); },
        py::arg("P"));

  m.def("mixing_time",
        [](const Matrix& P, double eps_mix) { return mixing_time(chain_from(P), eps_mix); },
        py::arg("P"), py::arg("eps_mix"));

  m.def("hitting_time",
        [](const Matrix& P, int j) { return hitting_time(chain_from(P), j); },
        py::arg("P"), py::arg("j"));

  m.def("time_reverse",
        [](const Matrix& P) {
          const MarkovChain chain = chain_from(P);
          return time_reverse(chain, stationary_distribution(chain)).transition();
        },
        py::arg("P"));

  m.def("lazify", [](const Matrix& P) { return lazify(chain_any(P)).transition(); },
        py::arg("P"));

  m.def("absorbing_variant",
        [](const Matrix& P, int j) { return absorbing_variant(chain_any(P), j).transition(); },
        py::arg("P"), py::arg("j"));

  m.def("interpolate",
        [](const Matrix& P, const Matrix& P_prime, double s) {
          return interpolate(chain_any(P), chain_any(P_prime), s).transition();
        },
        py::arg("P"), py::arg("P_prime"), py::arg("s"));

  m.def("s_star",
        [](double pi_j) {
          bool outside = false;
          const double value = s_star(pi_j, &outside);
          return py::make_tuple(value, !outside);
        },
        py::arg("pi_j"),
        "Returns (s*, in_open_interval); s* lies in (0,1) iff pi_j < 1/2.");

  m.def("interpolated_stationary",
        [](const Matrix& P, int j, double s) {
          return interpolated_stationary(chain_from(P), j, s);
        },
        py::arg("P"), py::arg("j"), py::arg("s"));

  m.def("discriminant", [](const Matrix& P) { return discriminant(chain_from(P)).D; },
        py::arg("P"));

  m.def("hamiltonian",
        [](const Matrix& P) {
          const HamiltonianModel h = build_hamiltonian(discriminant(chain_from(P)));
          return py::make_tuple(h.mu, h.U, h.gap);
        },
        py::arg("P"), "Returns (mu, U, gap) of the chain Hamiltonian.");

  m.def("run_protocol",
        [](const Matrix& P, int j, double eps, std::optional<double> s_prime,
           std::optional<double> gap_stage1, std::optional<double> gap_stage2,
           int copies, int pointer_size, const std::string& mode, std::uint64_t seed) {
          ProtocolConfig config;
          config.eps = eps;
          config.s_prime = s_prime;
          config.gap_stage1 = gap_stage1;
          config.gap_stage2 = gap_stage2;
          config.copies_stage1 = copies;
          config.copies_stage2 = copies;
          config.pointer_size = pointer_size;
          config.mode = mode == "sampled" ? ProtocolMode::kSampled
                                          : ProtocolMode::kExactConditional;
          config.seed = seed;
          const ProtocolResult result = run_protocol(chain_from(P), j, config);

          py::dict d;
          d["fidelity_sq"] = result.fidelity_sq;
          d["success_prob"] = result.success_prob;
          d["total_evolution_time"] = result.total_evolution_time;
          d["leakage"] = result.leakage;
          d["s_prime"] = result.s_prime_used;
          d["oracle_assisted_s"] = result.oracle_assisted_s;
          d["pointer_size"] = result.pointer_size;
          d["final_state"] = VectorXcd(result.final_state);
          d["stage1"] = stage_dict(result.stage1);
          d["stage2"] = stage_dict(result.stage2);
          return d;
        },
        py::arg("P"), py::arg("j"), py::arg("eps") = 0.05,
        py::arg("s_prime") = std::nullopt, py::arg("gap_stage1") = std::nullopt,
        py::arg("gap_stage2") = std::nullopt, py::arg("copies") = 0,
        py::arg("pointer_size") = 0, py::arg("mode") = "exact", py::arg("seed") = 0,
        "Two-stage preparation of sqrt(pi); s_prime=None resolves s* exactly "
        "(oracle-assisted).");

  m.def("overlap_alpha", &overlap_alpha, py::arg("pi_j"), py::arg("s_prime"));
  m.def("overlap_beta",
        [](double pi_j, double s_prime) { return overlap_beta(pi_j, s_prime); },
        py::arg("pi_j"), py::arg("s_prime"));
  m.def("coefficients_ab", &coefficients_ab, py::arg("alpha"), py::arg("beta"),
        py::arg("eps"));
  m.def("stage_costs",
        [](double delta_s, double delta, double alpha, double beta, double eps,
           const std::string& variant) {
          return stage_costs(delta_s, delta, alpha, beta, eps,
                             variant == "linear-overlap"
                                 ? StageCostVariant::kLinearOverlap
                                 : StageCostVariant::kSqrtProduct);
        },
        py::arg("delta_s"), py::arg("delta"), py::arg("alpha"), py::arg("beta"),
        py::arg("eps"), py::arg("variant") = "sqrt-product");
  m.def("total_scaling", &total_scaling, py::arg("A"), py::arg("B"), py::arg("t_hit"),
        py::arg("t_mix"));
  m.def("sensitivity_copies", &sensitivity_copies, py::arg("C"), py::arg("eps"));
  m.def("sensitivity_delta", &sensitivity_delta, py::arg("C"), py::arg("eps"));
  m.def("alt_stage2_cost", &alt_stage2_cost, py::arg("delta"), py::arg("delta_overlap"));
  m.def("hitting_bound_ratio",
        [](const Matrix& P, int j, double s_prime) {
          return hitting_bound_ratio(chain_from(P), j, s_prime);
        },
        py::arg("P"), py::arg("j"), py::arg("s_prime"));

  m.def("sweep_ab",
        [](double pi_j, double eps, int grid) {
          const auto rows = sweep_ab(pi_j, eps, grid);
          Matrix table(static_cast<Eigen::Index>(rows.size()), 5);
          for (std::size_t i = 0; i < rows.size(); ++i) {
            table(static_cast<Eigen::Index>(i), 0) = rows[i].s_prime;
            table(static_cast<Eigen::Index>(i), 1) = rows[i].alpha;
            table(static_cast<Eigen::Index>(i), 2) = rows[i].beta;
            table(static_cast<Eigen::Index>(i), 3) = rows[i].A;
            table(static_cast<Eigen::Index>(i), 4) = rows[i].B;
          }
          return table;
        },
        py::arg("pi_j"), py::arg("eps"), py::arg("grid") = 512,
        "Columns: s_prime, alpha, beta, A, B.");
}
