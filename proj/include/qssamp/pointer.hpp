#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <utility>

#include "qssamp/hamiltonian.hpp"

namespace qssamp {

using MatrixXcd = Eigen::MatrixXcd;

/// Periodic pointer lattice with DFT-conjugate position and momentum grids.
/// Positions x_m = m dx and momenta p_k = 2 pi k / (L dx) both run over the
/// signed index set {-L/2, ..., L/2 - 1}; x = 0 sits at column L/2.
class PointerRegister {
 public:
  /// L must be an even power of two, at least 4; dx > 0.
  PointerRegister(int L, double dx = 1.0);

  int size() const { return L_; }
  double dx() const { return dx_; }
  int zero_index() const { return L_ / 2; }
  double position(int col) const { return (col - L_ / 2) * dx_; }
  double momentum(int row) const;

  /// Unitary DFT F(k, m) = exp(-i p_k x_m) / sqrt(L) over the signed grids.
  const MatrixXcd& dft() const { return *dft_; }

  /// Delta amplitude at x = 0.
  VectorXcd initial_state() const;

 private:
  int L_;
  double dx_;
  std::shared_ptr<const MatrixXcd> dft_;
};

/// Mirrors the protocol step that prepares the pointer in |x = 0>.
PointerRegister init_pointer(int L, double dx = 1.0);

/// Complex amplitude grid over system basis (rows) x pointer positions
/// (columns), together with the cumulative probability of all
/// post-selections applied so far.
struct JointState {
  PointerRegister pointer;
  MatrixXcd amplitudes;
  double cumulative_probability = 1.0;

  static JointState product(const VectorXcd& system, const PointerRegister& reg);
  double norm() const { return amplitudes.norm(); }
};

/// exp(-i (H x p) t): applies phases exp(-i mu_k p_m t) in the (eigenbasis of
/// H) x (momentum) product basis, returning to computational x position basis.
/// Unitary; each eigencomponent's pointer is translated by mu_k t.
JointState evolve(const HamiltonianModel& model, const JointState& state, double t);

/// Projects the pointer onto the window of lattice sites around x = 0
/// (window = 0 keeps the single x = 0 site), renormalizes, and returns the
/// conditional system state and its probability. With window > 0 the
/// probability covers the whole window but the returned vector is still the
/// x = 0 column: coherent aggregation across sites is only defined for a
/// single site.
std::pair<VectorXcd, double> postselect_zero(const JointState& state, int window = 0);

}  // namespace qssamp
