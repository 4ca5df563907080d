#include <doctest.h>

#include <cmath>
#include <complex>

#include "qssamp/cost.hpp"
#include "qssamp/hamiltonian.hpp"
#include "qssamp/interpolation.hpp"
#include "qssamp/rng.hpp"
#include "support/oracles.hpp"

using namespace qssamp;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("discriminant of a symmetric chain is the chain itself") {
  const MarkovChain flat = MarkovChain::validate(mat2(0.5, 0.5, 0.5, 0.5));
  const DiscriminantMatrix disc = discriminant(flat);
  CHECK((disc.D - flat.transition()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("discriminant entries are sqrt(P_xy P_yx)") {
  const MarkovChain chain = MarkovChain::validate(mat2(0.9, 0.1, 0.2, 0.8));
  const DiscriminantMatrix disc = discriminant(chain);
  CHECK(disc.D(0, 1) == doctest::Approx(std::sqrt(0.02)).epsilon(1e-15));
  CHECK(disc.D(1, 0) == disc.D(0, 1));
}

TEST_CASE("discriminant shares the spectrum of a reversible chain") {
  // Both chains are 2x2, so the characteristic polynomial provides an
  // eigensolver-independent cross-check.
  const MarkovChain chain = MarkovChain::validate(mat2(0.9, 0.1, 0.2, 0.8));
  const auto [p1, p2] = test::eigenvalues_2x2(chain.transition());
  const auto [d1, d2] = test::eigenvalues_2x2(discriminant(chain).D);
  CHECK(d1 == doctest::Approx(p1).epsilon(1e-9));
  CHECK(d2 == doctest::Approx(p2).epsilon(1e-9));
}

TEST_CASE("discriminant rejects non-reversible chains") {
  Matrix P(3, 3);
  P << 0.3, 0.6, 0.1,
       0.1, 0.3, 0.6,
       0.6, 0.1, 0.3;
  CHECK_THROWS_AS(discriminant(MarkovChain::validate(P)), NotReversibleError);
}

TEST_CASE("hamiltonian spectrum for the two-state chains") {
  const MarkovChain flat = MarkovChain::validate(mat2(0.5, 0.5, 0.5, 0.5));
  const HamiltonianModel h_flat = build_hamiltonian(discriminant(flat));
  CHECK(h_flat.mu(0) == 0.0);
  CHECK(h_flat.mu(1) == doctest::Approx(1.0).epsilon(1e-12));

  const MarkovChain lazy2 = MarkovChain::validate(mat2(0.9, 0.1, 0.1, 0.9));
  const HamiltonianModel h = build_hamiltonian(discriminant(lazy2));
  CHECK(h.mu(0) == 0.0);
  CHECK(h.mu(1) == doctest::Approx(0.6).epsilon(1e-12));  // sqrt(1 - 0.8^2)
}

TEST_CASE("hamiltonian spectral contract over the ensemble") {
  for (const auto& member : test::reversible_ensemble()) {
    const HamiltonianModel h = build_hamiltonian(discriminant(member.chain));
    const int n = h.size();
    CHECK(h.mu(0) == 0.0);
    for (int k = 1; k < n; ++k) {
      CHECK(h.mu(k) > 0.0);
      CHECK(h.mu(k) <= 1.0 + 1e-12);
    }
    const Vector sqrt_pi = stationary_distribution(member.chain).cwiseSqrt();
    CHECK((h.zero_eigenvector() - sqrt_pi).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((h.U.transpose() * h.U - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("hamiltonian gap and the sqrt(Delta) lower bound") {
  const MarkovChain lazy = lazify(gen_family(ChainFamily::kRandomReversible, 5, 13));
  const double delta = spectral_gap(lazy);
  const HamiltonianModel h = build_hamiltonian(discriminant(lazy));
  CHECK(hamiltonian_gap(h) >= std::sqrt(delta) - 1e-12);
  CHECK(hamiltonian_gap(h) <= 1.0 + 1e-12);
  // Exact spectral map: gap^2 = 1 - lambda_2^2 = Delta (2 - Delta).
  CHECK(hamiltonian_gap(h) ==
        doctest::Approx(chain_gap_to_evolution_gap(delta)).epsilon(1e-9));

  // Worked instance: lambda_2 = 0.8 gives gap 0.6 >= sqrt(0.2).
  const MarkovChain lazy2 = MarkovChain::validate(mat2(0.9, 0.1, 0.1, 0.9));
  const HamiltonianModel h2 = build_hamiltonian(discriminant(lazy2));
  CHECK(hamiltonian_gap(h2) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(hamiltonian_gap(h2) >= std::sqrt(0.2));
}

TEST_CASE("reconstruction through the eigenbasis matches direct application") {
  for (const auto& member : test::reversible_ensemble()) {
    const HamiltonianModel h = build_hamiltonian(discriminant(member.chain));
    const int n = h.size();
    const Matrix reconstructed = h.U * h.mu.asDiagonal() * h.U.transpose();
    SeededRng rng(99);
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
    const Vector via_eigen = h.U * (h.mu.asDiagonal() * (h.U.transpose() * v));
    CHECK((reconstructed * v - via_eigen).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("zero-eigenvector at parameter s matches the interpolated stationary root") {
  const MarkovChain chain = gen_family(ChainFamily::kBirthDeath, 5, 21);
  const int j = 0;
  for (double s : {0.2, 0.5, 0.8}) {
    const MarkovChain interp = interpolate(chain, absorbing_variant(chain, j), s);
    const HamiltonianModel h = build_hamiltonian(discriminant(interp));
    const Vector expected = interpolated_stationary(chain, j, s).cwiseSqrt();
    CHECK((h.zero_eigenvector() - expected).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("expand_in_eigenbasis: zero-eigenvector, Parseval, and alpha link") {
  const MarkovChain chain = gen_family(ChainFamily::kBirthDeath, 4, 2);
  const HamiltonianModel h = build_hamiltonian(discriminant(chain));
  const int n = h.size();

  const VectorXcd u0 = h.zero_eigenvector().cast<std::complex<double>>();
  const VectorXcd coeffs = expand_in_eigenbasis(h, u0);
  CHECK(std::abs(coeffs(0)) == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 1; k < n; ++k) CHECK(std::abs(coeffs(k)) < 1e-10);

  // Coefficient 0 of |j> against H(s') equals the closed-form alpha.
  const Vector pi = stationary_distribution(chain);
  const int j = 0;
  const double s = 0.6;
  const MarkovChain interp = interpolate(chain, absorbing_variant(chain, j), s);
  const HamiltonianModel hs = build_hamiltonian(discriminant(interp));
  VectorXcd basis_j = VectorXcd::Zero(n);
  basis_j(j) = 1.0;
  const VectorXcd c = expand_in_eigenbasis(hs, basis_j);
  CHECK(std::abs(c(0)) == doctest::Approx(overlap_alpha(pi(j), s)).epsilon(1e-9));
  CHECK(c.squaredNorm() == doctest::Approx(1.0).epsilon(1e-9));

  VectorXcd unnormalized = 2.0 * basis_j;
  CHECK_THROWS_AS(expand_in_eigenbasis(h, unnormalized), NotNormalizedError);
}

TEST_CASE("degenerate nonzero eigenvalues are compared through projectors") {
  // Complete graph on 4 states: discriminant eigenvalues {1, 0, 0, 0} give a
  // triply degenerate mu = 1; individual eigenvectors are basis-dependent but
  // the eigenspace projector is not.
  const MarkovChain complete = gen_family(ChainFamily::kComplete, 4, 0);
  const HamiltonianModel h = build_hamiltonian(discriminant(complete));
  CHECK(h.mu(0) == 0.0);
  for (int k = 1; k < 4; ++k) CHECK(h.mu(k) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix projector = Matrix::Zero(4, 4);
  for (int k = 1; k < 4; ++k) projector += h.U.col(k) * h.U.col(k).transpose();
  const Matrix expected =
      Matrix::Identity(4, 4) - h.U.col(0) * h.U.col(0).transpose();
  CHECK((projector - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("build_hamiltonian rejects degenerate top eigenvalues") {
  // Period-2 discriminant: eigenvalues {1, -1} share modulus 1.
  DiscriminantMatrix disc{mat2(0.0, 1.0, 1.0, 0.0)};
  CHECK_THROWS_AS(build_hamiltonian(disc), DegenerateTopEigenvalueError);
}
