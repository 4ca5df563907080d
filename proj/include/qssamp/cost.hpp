#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qssamp/markov.hpp"

namespace qssamp {

/// alpha = <j | v_n(s')> = sqrt(pi_j / (1 - s' (1 - pi_j))).
double overlap_alpha(double pi_j, double s_prime);

/// beta = <v_n(s') | pi> as a function of pi_j alone (the off-target mass
/// enters only through its total 1 - pi_j).
double overlap_beta(double pi_j, double s_prime);

/// beta evaluated against an explicit distribution; agrees with the pi_j-only
/// form because the x != j radical is constant across states.
double overlap_beta(const Vector& pi, int j, double s_prime);

/// The two displays of the per-stage complexity. The sqrt-of-product form is
/// the default; the linear-overlap form follows the total-complexity display
/// whose 1/alpha^2 weighting matches the definition of A.
enum class StageCostVariant { kSqrtProduct, kLinearOverlap };

/// (stage 1, stage 2) complexities:
///   sqrt-of-product: sqrt(1/(Delta_s a^2)) log(2/(eps a^2)) and the beta twin;
///   linear-overlap:  (1/(sqrt(Delta_s) a^2)) log(2/(eps a^2)) and the twin.
std::pair<double, double> stage_costs(double delta_s, double delta, double alpha,
                                      double beta, double eps,
                                      StageCostVariant variant = StageCostVariant::kSqrtProduct);

/// A = log(2/(eps alpha^2)) / (alpha^2 sqrt(1 - alpha^2)), constant factor 4
/// omitted; B = log(2/(eps beta^2)) / beta^2. Natural logarithms.
std::pair<double, double> coefficients_ab(double alpha, double beta, double eps);

double total_scaling(double A, double B, double t_hit, double t_mix);

struct SweepRow {
  double s_prime;
  double alpha;
  double beta;
  double A;
  double B;
};

/// Uniform grid s' = i / grid for i in [0, grid); the divergent s' = 1
/// endpoint is excluded. Rows are reproducible bit-exactly for fixed inputs.
std::vector<SweepRow> sweep_ab(double pi_j, double eps, int grid);

struct SweepSummary {
  double pi_j = 0.0;
  double eps = 0.0;
  double s_star = 0.0;
  bool s_star_in_open_interval = false;
  double argmin_A = 0.0;       // grid point minimizing A
  double A_min = 0.0;
  double A_at_s_star = 0.0;    // evaluated at s* directly, not on the grid
  double B_at_zero = 0.0;
};

SweepSummary summarize_sweep(double pi_j, double eps, const std::vector<SweepRow>& rows);

/// CSV with header s_prime,alpha,beta,A,B and 17-significant-digit decimals.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// The two Figure-1 presets (eps, pi_j).
inline constexpr std::pair<double, double> kFigurePresets[2] = {{0.01, 0.1},
                                                                {0.05, 0.5}};

/// (1/Delta(s')) (1 - alpha^2) / (4 T_hit); values >= 1 correspond to the
/// claimed hitting-time bound holding for this chain.
double hitting_bound_ratio(const MarkovChain& chain, int j, double s_prime);

/// ceil(log_{2/C}(4/eps)) pointer copies compensating a stage-2 gap
/// overestimate by the factor C in (0, 2).
int sensitivity_copies(double C, double eps);

/// delta = (eps/4)^{log_{1/2}(C/2)}: the degraded stage-1 overlap when the
/// stage-1 gap is overestimated by C and the original parameters are kept.
double sensitivity_delta(double C, double eps);

/// 1/(Delta delta) log(1/delta): stage-2 cost when started from the degraded
/// overlap delta instead of adding pointer copies.
double alt_stage2_cost(double delta, double delta_overlap);

enum class SensitivityBranch { kExtraCopies, kAltCost };

struct SensitivityRow {
  double C = 0.0;
  int copies = 0;
  double delta_overlap = 0.0;
  double alt_cost = 0.0;
  double extra_copies_cost = 0.0;
  SensitivityBranch cheaper = SensitivityBranch::kExtraCopies;
};

/// Evaluates both mitigation routes for a gap overestimated by C and reports
/// the cheaper one. delta is the true chain gap entering the stage-2 cost.
SensitivityRow sensitivity_row(double C, double eps, double delta);

enum class WhichGap { kStage1, kStage2 };

struct CostReport {
  double pi_j = 0.0;
  double s_prime = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double cost_stage1 = 0.0;
  double cost_stage2 = 0.0;
  double A = 0.0;
  double B = 0.0;
  double total_scaling = 0.0;
  std::string log_convention = "natural";
  bool precision_preserved = true;
  double gap_ratio_stage1 = 1.0;  // Delta'(s') / Delta(s')
  double gap_ratio_stage2 = 1.0;  // Delta' / Delta
};

CostReport make_cost_report(double pi_j, double s_prime, double delta_s, double delta,
                            double eps, double t_hit, double t_mix);

/// Bookkeeping for an underestimated gap Delta' <= Delta: precision is
/// preserved and the affected stage cost scales by sqrt(Delta / Delta').
CostReport underestimate_effect(CostReport report, double delta_used,
                                double delta_true, WhichGap which);

}  // namespace qssamp
