#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "qssamp/markov.hpp"

namespace qssamp {

using VectorXcd = Eigen::VectorXcd;

/// Symmetric matrix D_xy = sqrt(P_xy P_yx). For reversible ergodic chains it
/// shares the spectrum of P and its top eigenvector is sqrt(pi) entrywise.
struct DiscriminantMatrix {
  Matrix D;
  int size() const { return static_cast<int>(D.rows()); }
};

/// Requires a reversible ergodic chain (NotReversibleError otherwise).
DiscriminantMatrix discriminant(const MarkovChain& chain);

/// Eigendecomposition-based Hamiltonian: mu_k = sqrt(1 - lambda_k^2) over the
/// discriminant eigenpairs, so the top pair maps to eigenvalue 0 with
/// eigenvector sqrt(pi) and all other eigenvalues land in (0, 1].
struct HamiltonianModel {
  Vector mu;       // ascending; mu[0] = 0
  Matrix U;        // orthonormal columns, col 0 = sqrt(pi) with nonnegative entries
  double gap = 0;  // smallest nonzero mu
  std::string source;

  int size() const { return static_cast<int>(mu.size()); }
  Vector zero_eigenvector() const { return U.col(0); }
};

HamiltonianModel build_hamiltonian(const DiscriminantMatrix& disc,
                                   std::string source = {});

/// Smallest nonzero eigenvalue; equals sqrt(Delta (2 - Delta)) for a chain
/// with spectral gap Delta.
double hamiltonian_gap(const HamiltonianModel& model);

/// Coefficients alpha_k = <u_k | psi> of a normalized state in the eigenbasis.
/// Coefficient 0 is the overlap controlling post-selection success.
VectorXcd expand_in_eigenbasis(const HamiltonianModel& model, const VectorXcd& psi);

/// Exact spectral map from a chain gap to the matching Hamiltonian gap.
double chain_gap_to_evolution_gap(double delta);

}  // namespace qssamp
