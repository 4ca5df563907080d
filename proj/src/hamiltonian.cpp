#include "qssamp/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qssamp {

DiscriminantMatrix discriminant(const MarkovChain& chain) {
  if (!chain.ergodic()) {
    throw NotErgodicError("discriminant requires an ergodic chain", false, false);
  }
  const Vector pi = stationary_distribution(chain);
  if (!is_reversible(chain, pi, 1e-9)) {
    throw NotReversibleError("discriminant requires a reversible chain");
  }
  const Matrix& P = chain.transition();
  // sqrt(P_xy P_yx) is symmetric exactly: the product commutes bitwise.
  Matrix D = (P.array() * P.transpose().array()).sqrt().matrix();
  return DiscriminantMatrix{std::move(D)};
}

HamiltonianModel build_hamiltonian(const DiscriminantMatrix& disc, std::string source) {
  const int n = disc.size();
  if (n < 1 || disc.D.cols() != n) {
    throw DimensionMismatchError("discriminant matrix must be square");
  }
  if ((disc.D - disc.D.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DimensionMismatchError("discriminant matrix is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(disc.D);
  if (solver.info() != Eigen::Success) {
    throw EigensolverError("eigendecomposition of the discriminant failed");
  }
  const Vector& lambda = solver.eigenvalues();  // ascending
  const int top = n - 1;
  if (std::abs(lambda(top) - 1.0) > 1e-8) {
    throw EigensolverError("top discriminant eigenvalue is " +
                           std::to_string(lambda(top)) + ", expected 1");
  }
  if (n >= 2 && lambda(top) - std::abs(lambda(top - 1)) <= 1e-10) {
    throw DegenerateTopEigenvalueError(
        "top eigenvalue is not simple; input chain is not ergodic");
  }

  // mu_k = sqrt(1 - lambda_k^2); the known top pair is pinned to exactly 0 so
  // the zero eigenvalue is not polluted by eigensolver rounding.
  Vector mu(n);
  for (int k = 0; k < n; ++k) {
    const double l = std::clamp(lambda(k), -1.0, 1.0);
    mu(k) = (k == top) ? 0.0 : std::sqrt(std::max(0.0, 1.0 - l * l));
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return mu(a) < mu(b); });

  HamiltonianModel model;
  model.mu.resize(n);
  model.U.resize(n, n);
  for (int k = 0; k < n; ++k) {
    model.mu(k) = mu(order[k]);
    model.U.col(k) = solver.eigenvectors().col(order[k]);
  }
  if (n >= 2 && model.mu(1) <= 1e-12) {
    throw DegenerateTopEigenvalueError(
        "zero eigenvalue has multiplicity above one; input chain is not ergodic");
  }

  // Sign conventions: zero-eigenvector nonnegative, other columns
  // first-nonzero-positive. Keeps the basis deterministic across backends.
  {
    int arg = 0;
    model.U.col(0).cwiseAbs().maxCoeff(&arg);
    if (model.U(arg, 0) < 0.0) model.U.col(0) *= -1.0;
  }
  for (int k = 1; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(model.U(i, k)) > 1e-12) {
        if (model.U(i, k) < 0.0) model.U.col(k) *= -1.0;
        break;
      }
    }
  }

  model.gap = n >= 2 ? model.mu(1) : 1.0;
  model.source = std::move(source);
  return model;
}

double hamiltonian_gap(const HamiltonianModel& model) { return model.gap; }

VectorXcd expand_in_eigenbasis(const HamiltonianModel& model, const VectorXcd& psi) {
  if (psi.size() != model.size()) {
    throw DimensionMismatchError("state length does not match Hamiltonian dimension");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw NotNormalizedError("state norm deviates from 1 by more than 1e-9");
  }
  return model.U.transpose() * psi;
}

double chain_gap_to_evolution_gap(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw RangeError("chain gap must lie in (0,1]");
  }
  return std::sqrt(delta * (2.0 - delta));
}

}  // namespace qssamp
