// Command-line front end: chain generation and analysis, interpolation
// reports, protocol simulation, cost sweeps, and gap-sensitivity tables.
//
// Exit codes: 0 success, 2 validation, 3 no-valid-j, 4 simulation,
// 5 I/O, 6 sensitivity range, 7 generation.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qssamp/chain_io.hpp"
#include "qssamp/cost.hpp"
#include "qssamp/interpolation.hpp"
#include "qssamp/markov.hpp"
#include "qssamp/protocol.hpp"

namespace {

using nlohmann::json;
using namespace qssamp;

constexpr int kExitValidation = 2;
constexpr int kExitNoValidJ = 3;
constexpr int kExitSimulation = 4;
constexpr int kExitIo = 5;
constexpr int kExitSensitivity = 6;
constexpr int kExitGeneration = 7;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write output file '" + out_path + "'");
  out << text;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

std::optional<double> parse_s_prime(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw RangeError("--s-prime must be a number or 'auto', got '" + text + "'");
  }
}

struct GenArgs {
  std::string family = "random-reversible";
  int n = 4;
  std::uint64_t seed = 0;
  double p = -1.0;
  double q = -1.0;
  std::string out;
};

int cmd_gen(const GenArgs& args) {
  FamilyParams params;
  if (args.p >= 0.0) params.p = args.p;
  if (args.q >= 0.0) params.q = args.q;
  const MarkovChain chain =
      gen_family(family_from_name(args.family), args.n, args.seed, params);
  emit(chain_to_json(chain).dump(2) + "\n", args.out);
  return 0;
}

struct AnalyzeArgs {
  std::string chain_path;
  double eps_mix = 0.25;
  int j = 0;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const MarkovChain chain = read_chain_file(args.chain_path);
  if (args.j < 0 || args.j >= chain.size()) {
    throw IndexError("--j out of range for a chain with " +
                     std::to_string(chain.size()) + " states");
  }
  const ChainStatistics stats = analyze_chain(chain, args.eps_mix, args.j);
  json doc{
      {"n", chain.size()},
      {"pi", vector_to_json(stats.pi)},
      {"delta", stats.delta},
      {"t_mix", stats.t_mix},
      {"t_hit", stats.t_hit},
      {"eps_mix", stats.eps_mix},
      {"j", stats.target_j},
      {"reversible", stats.reversible},
  };
  const double pi_j = stats.pi(args.j);
  if (pi_j > 0.0 && pi_j < 0.5) {
    doc["s_star"] = s_star(pi_j);
  } else {
    doc["s_star"] = "undefined";
  }
  emit(doc.dump(2) + "\n", args.out);
  return 0;
}

struct InterpArgs {
  std::string chain_path;
  int j = 0;
  double s = 0.0;
  std::string out;
  std::string dump_hamiltonian;
};

int cmd_interp(const InterpArgs& args) {
  const MarkovChain chain = read_chain_file(args.chain_path);
  const InterpolationSpec spec = make_interpolation_spec(chain, args.j, args.s);
  const MarkovChain interp =
      interpolate(chain, absorbing_variant(chain, args.j), args.s);
  json doc{
      {"j", args.j},
      {"s", args.s},
      {"P_interpolated", chain_to_json(interp)["P"]},
      {"ergodic", interp.ergodic()},
  };
  if (spec.s_star) {
    doc["s_star"] = *spec.s_star;
  } else {
    doc["s_star"] = "undefined";
  }
  if (args.s < 1.0) {
    doc["pi_s"] = vector_to_json(interpolated_stationary(chain, args.j, args.s));
    doc["delta_s"] = spectral_gap(interp);
  }
  if (!args.dump_hamiltonian.empty()) {
    // Debug dump of the interpolated-chain Hamiltonian; not a stable format.
    std::ofstream dump(args.dump_hamiltonian);
    if (!dump) throw IoError("cannot write '" + args.dump_hamiltonian + "'");
    dump << hamiltonian_to_json(build_hamiltonian(discriminant(interp))).dump(2) << "\n";
  }
  emit(doc.dump(2) + "\n", args.out);
  return 0;
}

struct SimulateArgs {
  std::string chain_path;
  int j = 0;
  double eps = 0.05;
  std::string s_prime = "auto";
  double gap_stage1 = -1.0;
  double gap_stage2 = -1.0;
  int pointer_size = 0;
  int copies = 0;
  int window = 0;
  std::string mode = "exact";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& args) {
  const MarkovChain chain = read_chain_file(args.chain_path);
  ProtocolConfig config;
  config.eps = args.eps;
  config.s_prime = parse_s_prime(args.s_prime);
  if (args.gap_stage1 > 0.0) config.gap_stage1 = args.gap_stage1;
  if (args.gap_stage2 > 0.0) config.gap_stage2 = args.gap_stage2;
  config.pointer_size = args.pointer_size;
  config.copies_stage1 = args.copies;
  config.copies_stage2 = args.copies;
  config.window = args.window;
  config.seed = args.seed;
  if (args.mode == "exact") {
    config.mode = ProtocolMode::kExactConditional;
  } else if (args.mode == "sampled") {
    config.mode = ProtocolMode::kSampled;
  } else {
    throw RangeError("--mode must be 'exact' or 'sampled'");
  }

  const ProtocolResult result = run_protocol(chain, args.j, config);
  json doc = result_to_json(result);
  doc["mode"] = args.mode;
  doc["seed"] = args.seed;
  doc["eps"] = args.eps;
  doc["j"] = args.j;
  emit(doc.dump(2) + "\n", args.out);
  return 0;
}

struct SweepArgs {
  double pi_j = 0.1;
  double eps = 0.01;
  int grid = 512;
  std::string out;
};

int cmd_sweep(const SweepArgs& args) {
  const auto rows = sweep_ab(args.pi_j, args.eps, args.grid);
  std::ostringstream os;
  write_sweep_csv(os, rows);
  emit(os.str(), args.out);
  return 0;
}

std::string preset_file_name(double eps, double pi_j) {
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer), "fig1_eps%g_pij%g.csv", eps, pi_j);
  return buffer;
}

struct Figure1Args {
  std::string out_dir = ".";
  int grid = 512;
};

int cmd_figure1(const Figure1Args& args) {
  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + args.out_dir + "'");

  json summary = json::array();
  for (const auto& [eps, pi_j] : kFigurePresets) {
    const auto rows = sweep_ab(pi_j, eps, args.grid);
    const std::string path =
        (std::filesystem::path(args.out_dir) / preset_file_name(eps, pi_j)).string();
    std::ofstream out(path);
    if (!out) throw IoError("cannot write sweep file '" + path + "'");
    write_sweep_csv(out, rows);

    const SweepSummary s = summarize_sweep(pi_j, eps, rows);
    summary.push_back(json{
        {"eps", eps},
        {"pi_j", pi_j},
        {"file", path},
        {"rows", rows.size()},
        {"s_star", s.s_star},
        {"s_star_in_open_interval", s.s_star_in_open_interval},
        {"argmin_A", s.argmin_A},
        {"A_min", s.A_min},
        {"A_at_s_star", s.A_at_s_star},
        {"B_at_zero", s.B_at_zero},
    });
  }
  std::cout << json{{"presets", summary}}.dump(2) << "\n";
  return 0;
}

struct SensitivityArgs {
  std::vector<double> c_values;
  double eps = 0.05;
  double delta = 0.1;
  std::string which_gap = "stage1";
  std::string out;
};

int cmd_sensitivity(const SensitivityArgs& args) {
  if (args.which_gap != "stage1" && args.which_gap != "stage2") {
    throw RangeError("--which-gap must be 'stage1' or 'stage2'");
  }
  std::vector<double> bad;
  for (double c : args.c_values) {
    if (!(c > 0.0 && c < 2.0)) bad.push_back(c);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "C values out of range (0,2):";
    for (double c : bad) os << " " << c;
    os << "; at a factor of 2 or more no overlap guarantee remains and the "
          "algorithm gives no result";
    std::cerr << os.str() << "\n";
    return kExitSensitivity;
  }

  // The degraded-overlap restart is an alternative for the stage-1 gap only;
  // an overestimated stage-2 gap leaves extra copies as the single route.
  const bool stage1 = args.which_gap == "stage1";
  std::ostringstream os;
  os << "which_gap,C,copies,delta_overlap,alt_stage2_cost,extra_copies_cost,cheaper\n";
  char buffer[256];
  for (double c : args.c_values) {
    const SensitivityRow row = sensitivity_row(c, args.eps, args.delta);
    if (stage1) {
      std::snprintf(buffer, sizeof(buffer), "stage1,%.17g,%d,%.17g,%.17g,%.17g,%s\n",
                    row.C, row.copies, row.delta_overlap, row.alt_cost,
                    row.extra_copies_cost,
                    row.cheaper == SensitivityBranch::kExtraCopies ? "extra-copies"
                                                                   : "alt-cost");
    } else {
      std::snprintf(buffer, sizeof(buffer), "stage2,%.17g,%d,,,%.17g,extra-copies\n",
                    row.C, row.copies, row.extra_copies_cost);
    }
    os << buffer;
  }
  emit(os.str(), args.out);
  return 0;
}

struct HitboundArgs {
  std::string family = "complete";
  int n_min = 3;
  int n_max = 8;
  std::uint64_t seed = 0;
  std::string s_prime = "auto";
  std::string out;
  std::string fail_dir = ".";
};

int cmd_hitbound(const HitboundArgs& args) {
  const ChainFamily family = family_from_name(args.family);
  const std::optional<double> fixed_s = parse_s_prime(args.s_prime);

  std::ostringstream os;
  os << "family,n,seed,j,pi_j,s_prime,delta_s,t_hit,alpha,ratio\n";
  char buffer[320];
  for (int n = args.n_min; n <= args.n_max; ++n) {
    const MarkovChain chain = gen_family(family, n, args.seed);
    const Vector pi = stationary_distribution(chain);
    int j = 0;
    pi.minCoeff(&j);
    if (!(pi(j) < 0.5)) continue;  // no valid target state
    const double s = fixed_s ? *fixed_s : s_star(pi(j));
    const double alpha = overlap_alpha(pi(j), s);
    const MarkovChain interp = interpolate(chain, absorbing_variant(chain, j), s);
    const double delta_s = spectral_gap(interp);
    const double t_hit = hitting_time(chain, j);
    const double ratio = hitting_bound_ratio(chain, j, s);
    std::snprintf(buffer, sizeof(buffer),
                  "%s,%d,%llu,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  args.family.c_str(), n, static_cast<unsigned long long>(args.seed), j,
                  pi(j), s, delta_s, t_hit, alpha, ratio);
    os << buffer;

    if (ratio < 1.0) {
      // Archive the counterexample chain next to the table.
      std::error_code ec;
      std::filesystem::create_directories(args.fail_dir, ec);
      if (ec) throw IoError("cannot create directory '" + args.fail_dir + "'");
      std::snprintf(buffer, sizeof(buffer), "hitbound_fail_%s_n%d_seed%llu.json",
                    args.family.c_str(), n, static_cast<unsigned long long>(args.seed));
      const std::string path =
          (std::filesystem::path(args.fail_dir) / buffer).string();
      write_chain_file(path, chain);
    }
  }
  emit(os.str(), args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary-state preparation simulator and cost analyzer"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a chain from a named family");
  gen->add_option("--family", gen_args.family,
                  "two-state|cycle-lazy|complete|birth-death|random-reversible");
  gen->add_option("--n", gen_args.n, "State count");
  gen->add_option("--seed", gen_args.seed, "Generator seed");
  gen->add_option("--p", gen_args.p, "Family parameter p");
  gen->add_option("--q", gen_args.q, "Family parameter q");
  gen->add_option("--out", gen_args.out, "Output path (stdout when absent)");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Classical chain statistics");
  analyze->add_option("--chain", analyze_args.chain_path, "Chain JSON file")->required();
  analyze->add_option("--eps-mix", analyze_args.eps_mix, "Mixing tolerance");
  analyze->add_option("--j", analyze_args.j, "Target state for t_hit and s*");
  analyze->add_option("--out", analyze_args.out, "Output path");

  InterpArgs interp_args;
  auto* interp = app.add_subcommand("interp", "Interpolated-chain report");
  interp->add_option("--chain", interp_args.chain_path, "Chain JSON file")->required();
  interp->add_option("--j", interp_args.j, "Absorbing target state");
  interp->add_option("--s", interp_args.s, "Interpolation parameter in [0,1]");
  interp->add_option("--out", interp_args.out, "Output path");
  interp->add_option("--dump-hamiltonian", interp_args.dump_hamiltonian,
                     "Write the interpolated-chain Hamiltonian {mu, U} (debug)");

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand("simulate", "Run the two-stage protocol");
  simulate->add_option("--chain", simulate_args.chain_path, "Chain JSON file")->required();
  simulate->add_option("--j", simulate_args.j, "Initial basis state");
  simulate->add_option("--eps", simulate_args.eps, "Target precision");
  simulate->add_option("--s-prime", simulate_args.s_prime,
                       "Interpolation parameter or 'auto' (= s*, oracle-assisted)");
  simulate->add_option("--gap-stage1", simulate_args.gap_stage1,
                       "Chain-gap estimate for P(s'); exact when absent");
  simulate->add_option("--gap-stage2", simulate_args.gap_stage2,
                       "Chain-gap estimate for P; exact when absent");
  simulate->add_option("--pointer-size", simulate_args.pointer_size,
                       "Pointer lattice size (power of two; 0 = auto)");
  simulate->add_option("--copies", simulate_args.copies,
                       "Pointer copies per stage (0 = ceil(log2(4/eps)))");
  simulate->add_option("--window", simulate_args.window, "Post-selection window");
  simulate->add_option("--mode", simulate_args.mode, "exact|sampled");
  simulate->add_option("--seed", simulate_args.seed, "Sampling seed");
  simulate->add_option("--out", simulate_args.out, "Output path");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "A/B coefficient sweep over s'");
  sweep->add_option("--pi-j", sweep_args.pi_j, "Stationary mass of the target state");
  sweep->add_option("--eps", sweep_args.eps, "Target precision");
  sweep->add_option("--grid", sweep_args.grid, "Grid points (s' = 1 excluded)");
  sweep->add_option("--out", sweep_args.out, "Output path");

  Figure1Args figure1_args;
  auto* figure1 = app.add_subcommand("figure1", "Emit the two preset sweeps");
  figure1->add_option("--out-dir", figure1_args.out_dir, "Directory for the CSV files");
  figure1->add_option("--grid", figure1_args.grid, "Grid points per sweep");

  SensitivityArgs sensitivity_args;
  auto* sensitivity =
      app.add_subcommand("sensitivity", "Gap-overestimation mitigation table");
  sensitivity->add_option("--c", sensitivity_args.c_values, "C = Delta'/Delta values")
      ->required();
  sensitivity->add_option("--eps", sensitivity_args.eps, "Target precision");
  sensitivity->add_option("--delta", sensitivity_args.delta, "True chain gap");
  sensitivity->add_option("--which-gap", sensitivity_args.which_gap,
                          "stage1|stage2 (the alt-cost route exists for stage1 only)");
  sensitivity->add_option("--out", sensitivity_args.out, "Output path");

  HitboundArgs hitbound_args;
  auto* hitbound = app.add_subcommand("hitbound", "Hitting-time bound audit");
  hitbound->add_option("--family", hitbound_args.family, "Chain family");
  hitbound->add_option("--n-min", hitbound_args.n_min, "Smallest state count");
  hitbound->add_option("--n-max", hitbound_args.n_max, "Largest state count");
  hitbound->add_option("--seed", hitbound_args.seed, "Generator seed");
  hitbound->add_option("--s-prime", hitbound_args.s_prime, "Value or 'auto' (= s*)");
  hitbound->add_option("--out", hitbound_args.out, "Output path");
  hitbound->add_option("--fail-dir", hitbound_args.fail_dir,
                       "Directory for archived sub-1 chains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_args);
    if (analyze->parsed()) return cmd_analyze(analyze_args);
    if (interp->parsed()) return cmd_interp(interp_args);
    if (simulate->parsed()) return cmd_simulate(simulate_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (figure1->parsed()) return cmd_figure1(figure1_args);
    if (sensitivity->parsed()) return cmd_sensitivity(sensitivity_args);
    if (hitbound->parsed()) return cmd_hitbound(hitbound_args);
  } catch (const NoValidJError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoValidJ;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const BadParamsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneration;
  } catch (const ChainFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const RowSumError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NegativeEntryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NotErgodicError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NotReversibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IndexError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DimensionMismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSimulation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSimulation;
  }
  return 0;
}
