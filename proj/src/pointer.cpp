#include "qssamp/pointer.hpp"

#include <cmath>
#include <numbers>

namespace qssamp {

namespace {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

}  // namespace

PointerRegister::PointerRegister(int L, double dx) : L_(L), dx_(dx) {
  if (L < 4 || !is_power_of_two(L)) {
    throw BadSizeError("pointer lattice size must be a power of two >= 4, got " +
                       std::to_string(L));
  }
  if (!(dx > 0.0)) throw BadSizeError("pointer lattice spacing must be positive");

  auto F = std::make_shared<MatrixXcd>(L, L);
  const double scale = 1.0 / std::sqrt(static_cast<double>(L));
  for (int r = 0; r < L; ++r) {
    const long k = r - L / 2;
    for (int c = 0; c < L; ++c) {
      const long m = c - L / 2;
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k * m) / L;
      (*F)(r, c) = scale * std::complex<double>(std::cos(angle), std::sin(angle));
    }
  }
  dft_ = std::move(F);
}

double PointerRegister::momentum(int row) const {
  return 2.0 * std::numbers::pi * (row - L_ / 2) / (L_ * dx_);
}

VectorXcd PointerRegister::initial_state() const {
  VectorXcd psi = VectorXcd::Zero(L_);
  psi(zero_index()) = 1.0;
  return psi;
}

PointerRegister init_pointer(int L, double dx) { return PointerRegister(L, dx); }

JointState JointState::product(const VectorXcd& system, const PointerRegister& reg) {
  JointState state{reg, MatrixXcd::Zero(system.size(), reg.size()), 1.0};
  state.amplitudes.col(reg.zero_index()) = system;
  return state;
}

JointState evolve(const HamiltonianModel& model, const JointState& state, double t) {
  if (t < 0.0) throw RangeError("evolution time must be nonnegative");
  const int n = model.size();
  const int L = state.pointer.size();
  if (state.amplitudes.rows() != n) {
    throw DimensionMismatchError("system dimension does not match the Hamiltonian");
  }
  if (state.amplitudes.cols() != L) {
    throw DimensionMismatchError("pointer dimension does not match the register");
  }

  const MatrixXcd& F = state.pointer.dft();
  // Rows of the grid are pointer wavefunctions: position -> momentum is a
  // right-multiplication by F^T, the inverse by conj(F).
  MatrixXcd grid = model.U.transpose() * state.amplitudes * F.transpose();
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < L; ++m) {
      const double angle = -model.mu(k) * state.pointer.momentum(m) * t;
      grid(k, m) *= std::complex<double>(std::cos(angle), std::sin(angle));
    }
  }
  JointState out{state.pointer, model.U * (grid * F.conjugate()),
                 state.cumulative_probability};
  return out;
}

std::pair<VectorXcd, double> postselect_zero(const JointState& state, int window) {
  if (window < 0) throw RangeError("post-selection window must be nonnegative");
  const int L = state.pointer.size();
  const int c0 = state.pointer.zero_index();

  double probability = 0.0;
  for (int c = std::max(0, c0 - window); c <= std::min(L - 1, c0 + window); ++c) {
    probability += state.amplitudes.col(c).squaredNorm();
  }
  const double center_norm = state.amplitudes.col(c0).norm();
  if (!(probability > 1e-300) || !(center_norm > 1e-300)) {
    throw ZeroProbabilityError("post-selection annihilates the state");
  }
  return {state.amplitudes.col(c0) / center_norm, probability};
}

}  // namespace qssamp
