#pragma once

// Independent reference routes used by the tests. Everything here stays off
// the library's own code paths for the quantity it checks: eigenvalues come
// from characteristic polynomials or raw Eigen solves, hitting times from a
// spectral formula instead of the minor solve, and joint evolution from a
// dense matrix exponential instead of the eigenbasis-phase route.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>
#include <utility>
#include <vector>

#include "qssamp/markov.hpp"
#include "qssamp/pointer.hpp"

namespace qssamp::test {

// Eigenvalues of a 2x2 matrix from the characteristic polynomial,
// sorted descending by absolute value. Requires a real discriminant.
inline std::pair<double, double> eigenvalues_2x2(const Matrix& M) {
  const double tr = M(0, 0) + M(1, 1);
  const double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  double a = (tr + disc) / 2.0;
  double b = (tr - disc) / 2.0;
  if (std::abs(a) < std::abs(b)) std::swap(a, b);
  return {a, b};
}

// E_pi[time to hit j] through the spectral identity
//   (1/pi_j) sum_{k >= 2} u_k(j)^2 / (1 - lambda_k)
// over the eigenpairs of the discriminant of a reversible chain.
inline double spectral_hitting_time(const MarkovChain& chain, int j) {
  const int n = chain.size();
  const Matrix& P = chain.transition();
  const Matrix D = (P.array() * P.transpose().array()).sqrt().matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(D);
  const Vector& lambda = solver.eigenvalues();  // ascending; top is last
  const Matrix& U = solver.eigenvectors();
  const double pi_j = U(j, n - 1) * U(j, n - 1);
  double sum = 0.0;
  for (int k = 0; k < n - 1; ++k) {
    sum += U(j, k) * U(j, k) / (1.0 - lambda(k));
  }
  return sum / pi_j;
}

// Dense e^{-i (H x p_hat) t} |psi x pointer> on the flattened joint vector,
// with p_hat assembled as F^H diag(p) F in the position basis.
inline Eigen::VectorXcd brute_force_evolve(const HamiltonianModel& model,
                                           const PointerRegister& reg,
                                           const Eigen::VectorXcd& joint, double t) {
  const int L = reg.size();
  const Matrix H = model.U * model.mu.asDiagonal() * model.U.transpose();

  Eigen::VectorXcd momenta(L);
  for (int m = 0; m < L; ++m) momenta(m) = reg.momentum(m);
  const Eigen::MatrixXcd p_hat =
      reg.dft().adjoint() * momenta.asDiagonal() * reg.dft();

  Eigen::MatrixXcd h_joint =
      Eigen::kroneckerProduct(H.cast<std::complex<double>>(), p_hat);
  const Eigen::MatrixXcd U_t = (std::complex<double>(0.0, -1.0) * t * h_joint).exp();
  return U_t * joint;
}

inline Eigen::VectorXcd flatten(const Eigen::MatrixXcd& grid) {
  Eigen::VectorXcd out(grid.size());
  for (int i = 0; i < grid.rows(); ++i) {
    out.segment(i * grid.cols(), grid.cols()) = grid.row(i).transpose();
  }
  return out;
}

// Reversible ergodic ensemble (n <= 6) shared by the protocol-level tests.
struct EnsembleMember {
  std::string name;
  MarkovChain chain;
  int j;  // the state minimizing pi, so pi_j < 1/2 throughout
};

inline std::vector<EnsembleMember> reversible_ensemble() {
  const auto member = [](std::string name, MarkovChain chain) {
    const Vector pi = stationary_distribution(chain);
    int j = 0;
    pi.minCoeff(&j);
    return EnsembleMember{std::move(name), std::move(chain), j};
  };
  std::vector<EnsembleMember> ensemble;
  ensemble.push_back(member("two-state-asym",
                            gen_family(ChainFamily::kTwoState, 2, 0, {{0.3}, {0.1}})));
  ensemble.push_back(member("birth-death-4", gen_family(ChainFamily::kBirthDeath, 4, 11)));
  ensemble.push_back(member("birth-death-5", gen_family(ChainFamily::kBirthDeath, 5, 5)));
  ensemble.push_back(member("cycle-lazy-5", gen_family(ChainFamily::kCycleLazy, 5, 0)));
  ensemble.push_back(member("random-reversible-5",
                            gen_family(ChainFamily::kRandomReversible, 5, 7)));
  ensemble.push_back(member("random-reversible-6",
                            gen_family(ChainFamily::kRandomReversible, 6, 3)));
  return ensemble;
}

}  // namespace qssamp::test
