#include "qssamp/cost.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qssamp/interpolation.hpp"
#include "qssamp/numeric.hpp"

namespace qssamp {

namespace {

void check_pi_j(double pi_j) {
  if (!(pi_j > 0.0 && pi_j < 1.0)) throw RangeError("pi_j must lie in (0,1)");
}

void check_s_prime(double s_prime) {
  if (!(s_prime >= 0.0 && s_prime <= 1.0)) throw RangeError("s' must lie in [0,1]");
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw RangeError("eps must lie in (0,1)");
}

}  // namespace

double overlap_alpha(double pi_j, double s_prime) {
  check_pi_j(pi_j);
  check_s_prime(s_prime);
  return std::sqrt(pi_j / (1.0 - s_prime * (1.0 - pi_j)));
}

double overlap_beta(double pi_j, double s_prime) {
  check_pi_j(pi_j);
  check_s_prime(s_prime);
  const double denom = 1.0 - s_prime * (1.0 - pi_j);
  return pi_j * std::sqrt(1.0 / denom) +
         (1.0 - pi_j) * std::sqrt((1.0 - s_prime) / denom);
}

double overlap_beta(const Vector& pi, int j, double s_prime) {
  if (j < 0 || j >= pi.size()) throw RangeError("state index out of range");
  check_s_prime(s_prime);
  const double pj = pi(j);
  check_pi_j(pj);
  const double denom = 1.0 - s_prime * (1.0 - pj);
  double off_mass = 0.0;
  for (Eigen::Index x = 0; x < pi.size(); ++x) {
    if (x != j) off_mass += pi(x);
  }
  return pj * std::sqrt(1.0 / denom) + off_mass * std::sqrt((1.0 - s_prime) / denom);
}

std::pair<double, double> stage_costs(double delta_s, double delta, double alpha,
                                      double beta, double eps, StageCostVariant variant) {
  if (!(delta_s > 0.0) || !(delta > 0.0)) throw RangeError("gaps must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw RangeError("alpha must lie in (0,1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw RangeError("beta must lie in (0,1]");
  check_eps(eps);

  const double a2 = alpha * alpha;
  const double b2 = beta * beta;
  const double log1 = std::log(2.0 / (eps * a2));
  const double log2 = std::log(2.0 / (eps * b2));
  switch (variant) {
    case StageCostVariant::kSqrtProduct:
      return {std::sqrt(1.0 / (delta_s * a2)) * log1,
              std::sqrt(1.0 / (delta * b2)) * log2};
    case StageCostVariant::kLinearOverlap:
      return {log1 / (std::sqrt(delta_s) * a2), log2 / (std::sqrt(delta) * b2)};
  }
  throw RangeError("unknown stage-cost variant");
}

std::pair<double, double> coefficients_ab(double alpha, double beta, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    if (alpha == 1.0) throw DivergenceError("A diverges at alpha = 1");
    throw RangeError("alpha must lie in (0,1)");
  }
  if (!(beta > 0.0 && beta <= 1.0)) throw RangeError("beta must lie in (0,1]");
  check_eps(eps);
  const double a2 = alpha * alpha;
  const double b2 = beta * beta;
  const double A = std::log(2.0 / (eps * a2)) / (a2 * std::sqrt(1.0 - a2));
  const double B = std::log(2.0 / (eps * b2)) / b2;
  return {A, B};
}

double total_scaling(double A, double B, double t_hit, double t_mix) {
  if (A < 0.0 || B < 0.0 || t_hit < 0.0 || t_mix < 0.0) {
    throw RangeError("total_scaling arguments must be nonnegative");
  }
  return A * std::sqrt(t_hit) + B * std::sqrt(t_mix);
}

std::vector<SweepRow> sweep_ab(double pi_j, double eps, int grid) {
  if (grid < 16) throw RangeError("sweep grid must have at least 16 points");
  check_pi_j(pi_j);
  check_eps(eps);
  std::vector<SweepRow> rows;
  rows.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    const double s = static_cast<double>(i) / grid;
    SweepRow row;
    row.s_prime = s;
    row.alpha = overlap_alpha(pi_j, s);
    row.beta = overlap_beta(pi_j, s);
    const auto [A, B] = coefficients_ab(row.alpha, row.beta, eps);
    row.A = A;
    row.B = B;
    rows.push_back(row);
  }
  return rows;
}

SweepSummary summarize_sweep(double pi_j, double eps, const std::vector<SweepRow>& rows) {
  if (rows.empty()) throw RangeError("sweep is empty");
  SweepSummary summary;
  summary.pi_j = pi_j;
  summary.eps = eps;
  bool outside = false;
  summary.s_star = s_star(pi_j, &outside);
  summary.s_star_in_open_interval = !outside;

  const auto min_it = std::min_element(
      rows.begin(), rows.end(),
      [](const SweepRow& a, const SweepRow& b) { return a.A < b.A; });
  summary.argmin_A = min_it->s_prime;
  summary.A_min = min_it->A;

  const double alpha_star = overlap_alpha(pi_j, summary.s_star);
  summary.A_at_s_star = coefficients_ab(alpha_star, overlap_beta(pi_j, summary.s_star), eps).first;
  summary.B_at_zero = rows.front().s_prime == 0.0
                          ? rows.front().B
                          : coefficients_ab(overlap_alpha(pi_j, 0.0), 1.0, eps).second;
  return summary;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "s_prime,alpha,beta,A,B\n";
  char buffer[192];
  for (const SweepRow& row : rows) {
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  row.s_prime, row.alpha, row.beta, row.A, row.B);
    os << buffer;
  }
}

double hitting_bound_ratio(const MarkovChain& chain, int j, double s_prime) {
  if (!(s_prime >= 0.0 && s_prime < 1.0)) throw RangeError("s' must lie in [0,1)");
  const Vector pi = stationary_distribution(chain);
  if (!(pi(j) > 0.0 && pi(j) < 0.5)) {
    throw RangeError("hitting-bound ratio requires pi_j in (0, 1/2)");
  }
  const MarkovChain interp = interpolate(chain, absorbing_variant(chain, j), s_prime);
  const double delta_s = spectral_gap(interp);
  const double t_hit = hitting_time(chain, j);
  const double alpha = overlap_alpha(pi(j), s_prime);
  return (1.0 / delta_s) * (1.0 - alpha * alpha) / (4.0 * t_hit);
}

namespace {

void check_c_factor(double C) {
  if (!(C > 0.0 && C < 2.0)) {
    throw RangeError(
        "C = Delta'/Delta must lie in (0,2): at a factor of 2 or more no "
        "overlap guarantee remains and the filter gives no result");
  }
}

}  // namespace

int sensitivity_copies(double C, double eps) {
  check_c_factor(C);
  check_eps(eps);
  return static_cast<int>(guarded_ceil(std::log(4.0 / eps) / std::log(2.0 / C)));
}

double sensitivity_delta(double C, double eps) {
  check_c_factor(C);
  check_eps(eps);
  const double exponent = std::log(C / 2.0) / std::log(0.5);
  return std::pow(eps / 4.0, exponent);
}

double alt_stage2_cost(double delta, double delta_overlap) {
  if (!(delta > 0.0)) throw RangeError("chain gap must be positive");
  if (!(delta_overlap > 0.0 && delta_overlap < 1.0)) {
    throw RangeError("overlap must lie in (0,1)");
  }
  return (1.0 / (delta * delta_overlap)) * std::log(1.0 / delta_overlap);
}

SensitivityRow sensitivity_row(double C, double eps, double delta) {
  if (!(delta > 0.0)) throw RangeError("chain gap must be positive");
  SensitivityRow row;
  row.C = C;
  row.copies = sensitivity_copies(C, eps);
  row.delta_overlap = sensitivity_delta(C, eps);
  row.alt_cost = alt_stage2_cost(delta, row.delta_overlap);
  // Extra-copies route: the 1/sqrt(Delta) stage cost inflates by log_{2/C}(2).
  const double baseline = std::sqrt(1.0 / delta) * std::log(2.0 / eps);
  row.extra_copies_cost = baseline * (std::log(2.0) / std::log(2.0 / C));
  row.cheaper = row.extra_copies_cost <= row.alt_cost ? SensitivityBranch::kExtraCopies
                                                      : SensitivityBranch::kAltCost;
  return row;
}

CostReport make_cost_report(double pi_j, double s_prime, double delta_s, double delta,
                            double eps, double t_hit, double t_mix) {
  CostReport report;
  report.pi_j = pi_j;
  report.s_prime = s_prime;
  report.alpha = overlap_alpha(pi_j, s_prime);
  report.beta = overlap_beta(pi_j, s_prime);
  const auto [c1, c2] = stage_costs(delta_s, delta, report.alpha, report.beta, eps);
  report.cost_stage1 = c1;
  report.cost_stage2 = c2;
  const auto [A, B] = coefficients_ab(report.alpha, report.beta, eps);
  report.A = A;
  report.B = B;
  report.total_scaling = total_scaling(A, B, t_hit, t_mix);
  return report;
}

CostReport underestimate_effect(CostReport report, double delta_used,
                                double delta_true, WhichGap which) {
  if (!(delta_used > 0.0) || !(delta_true > 0.0) || delta_used > delta_true) {
    throw RangeError("underestimate_effect requires 0 < Delta' <= Delta");
  }
  const double inflation = std::sqrt(delta_true / delta_used);
  report.precision_preserved = true;
  if (which == WhichGap::kStage1) {
    report.cost_stage1 *= inflation;
    report.gap_ratio_stage1 = delta_used / delta_true;
  } else {
    report.cost_stage2 *= inflation;
    report.gap_ratio_stage2 = delta_used / delta_true;
  }
  return report;
}

}  // namespace qssamp
