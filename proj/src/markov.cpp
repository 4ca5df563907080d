#include "qssamp/markov.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "qssamp/hamiltonian.hpp"
#include "qssamp/rng.hpp"

namespace qssamp {

namespace {

std::string format_index(int i, int j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

// BFS distances on the positive-entry graph; unreached nodes get -1.
std::vector<int> bfs_levels(const Matrix& P, int root, bool transpose) {
  const int n = static_cast<int>(P.rows());
  std::vector<int> level(n, -1);
  std::deque<int> queue{root};
  level[root] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < n; ++v) {
      const double w = transpose ? P(v, u) : P(u, v);
      if (w > 0.0 && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level;
}

}  // namespace

ErgodicityReport check_ergodicity(const Matrix& P) {
  const int n = static_cast<int>(P.rows());
  ErgodicityReport report;

  const auto forward = bfs_levels(P, 0, /*transpose=*/false);
  const auto backward = bfs_levels(P, 0, /*transpose=*/true);
  report.irreducible =
      std::all_of(forward.begin(), forward.end(), [](int l) { return l >= 0; }) &&
      std::all_of(backward.begin(), backward.end(), [](int l) { return l >= 0; });
  if (!report.irreducible) return report;

  // Period = gcd over edges (u, v) of level[u] + 1 - level[v]; aperiodic iff 1.
  long g = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (P(u, v) > 0.0) {
        g = std::gcd(g, static_cast<long>(forward[u]) + 1 - forward[v]);
      }
    }
  }
  report.aperiodic = (std::abs(g) == 1);
  return report;
}

MarkovChain MarkovChain::validate(Matrix P, ErgodicityPolicy policy,
                                  bool renormalize_rows,
                                  std::vector<std::string> labels) {
  const Eigen::Index n = P.rows();
  if (n < 1 || P.cols() != n) {
    throw DimensionMismatchError("transition matrix must be square and nonempty");
  }
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != n) {
    throw DimensionMismatchError("label count does not match state count");
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double p = P(i, j);
      if (!std::isfinite(p)) {
        throw NegativeEntryError("non-finite entry at " +
                                 format_index(static_cast<int>(i), static_cast<int>(j)));
      }
      if (p < 0.0) {
        throw NegativeEntryError("negative entry " + std::to_string(p) + " at " +
                                 format_index(static_cast<int>(i), static_cast<int>(j)));
      }
      if (p > 1.0 + kRowSumTol) {
        throw RowSumError("entry " + std::to_string(p) + " above 1 at " +
                          format_index(static_cast<int>(i), static_cast<int>(j)));
      }
    }
    const double sum = P.row(i).sum();
    if (std::abs(sum - 1.0) > kRowSumTol) {
      if (renormalize_rows && sum > 0.0) {
        P.row(i) /= sum;
      } else {
        std::ostringstream os;
        os << "row " << i << " sums to " << sum << " (tolerance " << kRowSumTol << ")";
        throw RowSumError(os.str());
      }
    }
  }

  const ErgodicityReport report = check_ergodicity(P);
  if (policy == ErgodicityPolicy::kRequire && !report.ergodic()) {
    std::string what = "chain is not ergodic:";
    if (!report.irreducible) what += " irreducibility failed";
    if (report.irreducible && !report.aperiodic) what += " aperiodicity failed";
    throw NotErgodicError(what, report.irreducible, report.aperiodic);
  }
  return MarkovChain(std::move(P), std::move(labels), report.ergodic());
}

namespace {

void require_ergodic(const MarkovChain& chain, const char* op) {
  if (!chain.ergodic()) {
    throw NotErgodicError(std::string(op) + " requires an ergodic chain", false, false);
  }
}

Vector stationary_linear_solve(const MarkovChain& chain) {
  const int n = chain.size();
  const Matrix& P = chain.transition();
  // (P^T - I) pi = 0 with the normalization row sum(pi) = 1 appended.
  Matrix A(n + 1, n);
  A.topRows(n) = P.transpose() - Matrix::Identity(n, n);
  A.bottomRows(1).setOnes();
  Vector b = Vector::Zero(n + 1);
  b(n) = 1.0;
  Vector pi = A.colPivHouseholderQr().solve(b);
  const double residual = (P.transpose() * pi - pi).cwiseAbs().maxCoeff();
  if (!pi.allFinite() || residual > 1e-8) {
    throw SingularSystemError("stationary linear solve failed (residual " +
                              std::to_string(residual) + "); chain validation bug");
  }
  return pi;
}

Vector stationary_power_iteration(const MarkovChain& chain, long max_iterations) {
  const int n = chain.size();
  const Matrix Pt = chain.transition().transpose();
  Vector x = Vector::Constant(n, 1.0 / n);
  for (long it = 0; it < max_iterations; ++it) {
    Vector next = Pt * x;
    next /= next.sum();
    const double residual = (Pt * next - next).cwiseAbs().maxCoeff();
    x = next;
    if (residual <= 1e-14) return x;
  }
  throw ConvergenceError("power iteration exceeded " + std::to_string(max_iterations) +
                         " iterations");
}

}  // namespace

Vector stationary_distribution(const MarkovChain& chain, StationaryMethod method,
                               long max_iterations) {
  require_ergodic(chain, "stationary_distribution");
  switch (method) {
    case StationaryMethod::kLinearSolve:
      return stationary_linear_solve(chain);
    case StationaryMethod::kPowerIteration:
      return stationary_power_iteration(chain, max_iterations);
  }
  throw BadParamsError("unknown stationary method");
}

bool is_reversible(const MarkovChain& chain, const Vector& pi, double tol) {
  const int n = chain.size();
  const Matrix& P = chain.transition();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(pi(i) * P(i, j) - pi(j) * P(j, i)) > tol) return false;
    }
  }
  return true;
}

Spectrum chain_spectrum(const MarkovChain& chain) {
  require_ergodic(chain, "chain_spectrum");
  const int n = chain.size();
  Spectrum spectrum;

  const Vector pi = stationary_linear_solve(chain);
  if (is_reversible(chain, pi, 1e-9)) {
    const DiscriminantMatrix disc = discriminant(chain);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(disc.D);
    if (solver.info() != Eigen::Success) {
      throw EigensolverError("self-adjoint eigensolver failed on the discriminant");
    }
    // Reorder descending by |lambda|.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const Vector& ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(ev(a)) > std::abs(ev(b));
    });
    spectrum.eigenvalues.resize(n);
    spectrum.eigenvectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
      spectrum.eigenvalues(k) = ev(order[k]);
      spectrum.eigenvectors.col(k) = solver.eigenvectors().col(order[k]);
    }
    spectrum.from_discriminant = true;
  } else {
    Eigen::EigenSolver<Matrix> solver(chain.transition());
    if (solver.info() != Eigen::Success) {
      throw EigensolverError("general eigensolver failed on the transition matrix");
    }
    Vector magnitudes = solver.eigenvalues().cwiseAbs();
    std::sort(magnitudes.data(), magnitudes.data() + n, std::greater<double>());
    spectrum.eigenvalues = magnitudes;
    spectrum.from_discriminant = false;
  }

  if (std::abs(std::abs(spectrum.eigenvalues(0)) - 1.0) > 1e-8) {
    throw EigensolverError("top eigenvalue " + std::to_string(spectrum.eigenvalues(0)) +
                           " is not 1; eigensolver failure");
  }
  return spectrum;
}

double spectral_gap(const MarkovChain& chain) {
  const Spectrum spectrum = chain_spectrum(chain);
  return std::abs(spectrum.eigenvalues(0)) - std::abs(spectrum.eigenvalues(1));
}

long mixing_time(const MarkovChain& chain, double eps_mix, long cap) {
  require_ergodic(chain, "mixing_time");
  if (!(eps_mix > 0.0 && eps_mix < 1.0)) {
    throw RangeError("eps_mix must lie in (0,1)");
  }
  const int n = chain.size();
  const Matrix& P = chain.transition();
  const Vector pi = stationary_linear_solve(chain);

  const auto worst_tv = [&](const Matrix& M) {
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
      worst = std::max(worst, 0.5 * (M.row(x).transpose() - pi).cwiseAbs().sum());
    }
    return worst;
  };

  Matrix M = Matrix::Identity(n, n);
  for (long t = 0; t <= cap; ++t) {
    if (worst_tv(M) <= eps_mix) return t;
    M = M * P;
  }
  throw IterationCapError("mixing time exceeds iteration cap " + std::to_string(cap));
}

double hitting_time(const MarkovChain& chain, int j) {
  require_ergodic(chain, "hitting_time");
  const int n = chain.size();
  if (j < 0 || j >= n) throw IndexError("target state out of range");
  const Vector pi = stationary_linear_solve(chain);
  if (n == 1) return 0.0;

  // (I - Q) h = 1 over states != j, Q the minor of P with row/column j removed.
  Matrix A(n - 1, n - 1);
  const Matrix& P = chain.transition();
  for (int r = 0, x = 0; x < n; ++x) {
    if (x == j) continue;
    for (int c = 0, y = 0; y < n; ++y) {
      if (y == j) continue;
      A(r, c) = (x == y ? 1.0 : 0.0) - P(x, y);
      ++c;
    }
    ++r;
  }
  Eigen::PartialPivLU<Matrix> lu(A);
  const Vector h = lu.solve(Vector::Ones(n - 1));
  if (!h.allFinite() || (A * h - Vector::Ones(n - 1)).cwiseAbs().maxCoeff() > 1e-8) {
    throw SingularSystemError("hitting-time system is singular; chain validation bug");
  }

  double expectation = 0.0;
  for (int r = 0, x = 0; x < n; ++x) {
    if (x == j) continue;
    expectation += pi(x) * h(r++);
  }
  return expectation;
}

MarkovChain time_reverse(const MarkovChain& chain, const Vector& pi) {
  require_ergodic(chain, "time_reverse");
  const int n = chain.size();
  if (pi.size() != n) throw DimensionMismatchError("pi length does not match chain");
  for (int i = 0; i < n; ++i) {
    if (!(pi(i) > 0.0)) {
      throw ZeroStationaryEntryError("pi has a nonpositive entry at state " +
                                     std::to_string(i));
    }
  }
  const Matrix& P = chain.transition();
  Matrix R(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      R(i, j) = pi(j) * P(j, i) / pi(i);
    }
  }
  return MarkovChain::validate(std::move(R), ErgodicityPolicy::kRequire,
                               /*renormalize_rows=*/false, chain.labels());
}

MarkovChain lazify(const MarkovChain& chain) {
  const int n = chain.size();
  Matrix L = 0.5 * (Matrix::Identity(n, n) + chain.transition());
  return MarkovChain::validate(std::move(L), ErgodicityPolicy::kAllow,
                               /*renormalize_rows=*/false, chain.labels());
}

ChainFamily family_from_name(std::string_view name) {
  if (name == "two-state") return ChainFamily::kTwoState;
  if (name == "cycle-lazy") return ChainFamily::kCycleLazy;
  if (name == "complete") return ChainFamily::kComplete;
  if (name == "birth-death") return ChainFamily::kBirthDeath;
  if (name == "random-reversible") return ChainFamily::kRandomReversible;
  throw BadParamsError("unknown chain family '" + std::string(name) + "'");
}

std::string family_name(ChainFamily family) {
  switch (family) {
    case ChainFamily::kTwoState: return "two-state";
    case ChainFamily::kCycleLazy: return "cycle-lazy";
    case ChainFamily::kComplete: return "complete";
    case ChainFamily::kBirthDeath: return "birth-death";
    case ChainFamily::kRandomReversible: return "random-reversible";
  }
  throw BadParamsError("unknown chain family");
}

MarkovChain gen_family(ChainFamily family, int n, std::uint64_t seed,
                       const FamilyParams& params) {
  if (n < 2) throw BadParamsError("family generators require n >= 2");
  SeededRng rng(seed);

  switch (family) {
    case ChainFamily::kTwoState: {
      if (n != 2) throw BadParamsError("two-state family requires n = 2");
      const double p = params.p.value_or(0.1);
      const double q = params.q.value_or(0.1);
      if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) {
        throw BadParamsError("two-state family requires p, q in (0,1)");
      }
      Matrix P(2, 2);
      P << 1.0 - p, p, q, 1.0 - q;
      return MarkovChain::validate(std::move(P));
    }

    case ChainFamily::kCycleLazy: {
      Matrix P = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        P(i, i) += 0.5;
        P(i, (i + 1) % n) += 0.25;
        P(i, (i - 1 + n) % n) += 0.25;
      }
      return MarkovChain::validate(std::move(P));
    }

    case ChainFamily::kComplete: {
      Matrix P = Matrix::Constant(n, n, 1.0 / n);
      return MarkovChain::validate(std::move(P));
    }

    case ChainFamily::kBirthDeath: {
      Matrix P = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        double up = 0.0;
        double down = 0.0;
        if (i + 1 < n) up = params.p ? *params.p : rng.uniform(0.1, 0.35);
        if (i > 0) down = params.q ? *params.q : rng.uniform(0.1, 0.35);
        if (up + down >= 1.0) {
          throw BadParamsError("birth-death rates must satisfy p + q < 1");
        }
        if (i + 1 < n) P(i, i + 1) = up;
        if (i > 0) P(i, i - 1) = down;
        P(i, i) = 1.0 - up - down;
      }
      return MarkovChain::validate(std::move(P));
    }

    case ChainFamily::kRandomReversible: {
      // Symmetric positive weights normalized per row; reversible with
      // pi_i proportional to the row sums of W.
      Matrix W(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          const double w = rng.uniform(0.1, 1.0);
          W(i, j) = w;
          W(j, i) = w;
        }
      }
      Matrix P(n, n);
      for (int i = 0; i < n; ++i) P.row(i) = W.row(i) / W.row(i).sum();
      return MarkovChain::validate(std::move(P));
    }
  }
  throw BadParamsError("unknown chain family");
}

ChainStatistics analyze_chain(const MarkovChain& chain, double eps_mix, int target_j) {
  ChainStatistics stats;
  stats.pi = stationary_distribution(chain);
  stats.delta = spectral_gap(chain);
  stats.t_mix = mixing_time(chain, eps_mix);
  stats.t_hit = hitting_time(chain, target_j);
  stats.eps_mix = eps_mix;
  stats.target_j = target_j;
  stats.reversible = is_reversible(chain, stats.pi, 1e-9);
  return stats;
}

}  // namespace qssamp
