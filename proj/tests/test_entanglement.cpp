#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dse/channels.hpp"
#include "dse/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace dse;
using namespace dse::entanglement;
using fock::DensityOperator;
using fock::Mode;
using fock::TwoModeState;

namespace {

DensityOperator bell_minus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return DensityOperator::from_state(TwoModeState::from_amplitudes(v, 2, 2));
}

// Brute-force concurrence straight from the definition, using the general
// complex eigensolver on rho (sy x sy) rho* (sy x sy).
double concurrence_oracle(const ComplexMatrix& rho) {
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const ComplexMatrix r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(r);
  std::vector<double> lams;
  for (int i = 0; i < 4; ++i) lams.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(i).real())));
  std::sort(lams.begin(), lams.end(), std::greater<>());
  return std::max(0.0, lams[0] - lams[1] - lams[2] - lams[3]);
}

}  // namespace

TEST_CASE("negativity of the Bell state is 1/2, of separable states 0") {
  CHECK(negativity(bell_minus()) == doctest::Approx(0.5).epsilon(1e-12));

  const ComplexVector va = fock::coherent_state(0.4, 10);
  const ComplexVector vb = fock::coherent_state(Complex(0.1, 0.6), 10);
  const auto prod = DensityOperator::from_state(TwoModeState::product(va, vb));
  CHECK(negativity(prod) <= 1e-9);
}

TEST_CASE("ideal output state carries negativity 1/2 for any alpha") {
  for (double alpha : {0.0, 0.5, 1.5}) {
    const int d = fock::recommended_cutoff(alpha);
    const auto rho = DensityOperator::from_state(fock::build_output_state(alpha, d, d));
    CHECK(negativity(rho) == doctest::Approx(0.5).epsilon(1e-7));
  }
}

TEST_CASE("mode-B loss drops the negativity to eta_t/2") {
  const double alpha = 0.8, eta = 0.6;
  const int d = fock::recommended_cutoff(alpha);
  auto rho = DensityOperator::from_state(fock::build_output_state(alpha, d, d));
  rho = channels::apply_channel(rho, channels::loss_channel(eta, d), Mode::B);
  CHECK(negativity(rho) == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("negativity is invariant under local unitaries") {
  const double alpha = 0.7;
  const int d = fock::recommended_cutoff(alpha) + 6;
  auto rho = DensityOperator::from_state(fock::build_output_state(alpha, d, d));
  rho = channels::apply_channel(rho, channels::loss_channel(0.8, d), Mode::B);
  const double before = negativity(rho);

  const auto rotated = apply_local(fock::phase_rotation(0.9, d), fock::phase_rotation(-0.3, d), rho);
  CHECK(negativity(rotated) == doctest::Approx(before).epsilon(1e-9));

  const auto displaced =
      apply_local(fock::displacement(0.4, d), fock::displacement(Complex(0.0, -0.3), d), rho);
  CHECK(negativity(displaced) == doctest::Approx(before).epsilon(1e-7));
}

TEST_CASE("witness saturates at -1/2 on the ideal state") {
  for (double alpha : {0.0, 0.5, 1.5}) {
    const int d = fock::recommended_cutoff(alpha) + 4;
    const auto rho = DensityOperator::from_state(fock::build_output_state(alpha, d, d));
    const auto v = saturating_witness_vector(alpha, d, d);
    CHECK(witness_overlap(rho, v) == doctest::Approx(-0.5).epsilon(1e-7));
  }
}

TEST_CASE("witness overlap of separable states stays nonnegative") {
  const ComplexVector va = fock::coherent_state(0.5, 12);
  const ComplexVector vb = fock::coherent_state(0.5, 12);
  const auto prod = DensityOperator::from_state(TwoModeState::product(va, vb));
  const auto v = saturating_witness_vector(0.5, 12, 12);
  CHECK(witness_overlap(prod, v) >= -1e-9);
}

TEST_CASE("minus witness overlap lower-bounds the negativity on dephased states") {
  const double alpha2 = 1.0;
  const auto noise = channels::PhaseNoiseModel::gaussian(0.02, 41);
  const int d = fock::recommended_cutoff(std::sqrt(alpha2));
  const auto rho = channels::dephased_state(std::sqrt(alpha2), noise, d, d, {});
  const auto v = saturating_witness_vector(std::sqrt(alpha2), d, d);
  const double bound = -witness_overlap(rho, v);
  const double n = negativity(rho);
  CHECK(bound <= n + 1e-8);
  CHECK(bound > 0.4);  // still close to 1/2 at this noise level
}

TEST_CASE("witness overlap rejects mismatched dimensions") {
  const auto rho = bell_minus();
  CHECK_THROWS_AS(witness_overlap(rho, saturating_witness_vector(0.0, 3, 3)), NumericsError);
}

TEST_CASE("qubit projection of the ideal displaced-back state") {
  const int d = 10;
  const auto rho = DensityOperator::from_state(fock::build_output_state(0.0, d, d));
  const auto t = project_qubit_subspace(rho);
  CHECK(t.p01 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.p10 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.p00 <= 1e-14);
  CHECK(t.p11 <= 1e-14);
  CHECK(t.captured_mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.visibility == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("qubit projection of the vacuum") {
  ComplexVector vac = ComplexVector::Zero(9);
  vac(0) = 1.0;
  const auto rho = DensityOperator::from_state(TwoModeState::from_amplitudes(vac, 3, 3));
  const auto t = project_qubit_subspace(rho);
  CHECK(t.p00 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t.p01 + t.p10 + t.p11 <= 1e-14);
  CHECK(t.visibility == 0.0);  // no one-photon population to interfere
}

TEST_CASE("qubit projection keeps a unit-trace PSD block and bounded mass") {
  const double alpha = 0.7;
  const int d = fock::recommended_cutoff(alpha) + 4;
  auto rho = DensityOperator::from_state(fock::build_output_state(alpha, d, d));
  rho = channels::apply_channel(rho, channels::loss_channel(0.4, d), fock::Mode::B);
  rho = apply_local(fock::displacement(-alpha, d), fock::displacement(-alpha, d), rho);
  rho.matrix /= rho.trace_real();
  const auto t = project_qubit_subspace(rho);
  CHECK(t.p00 + t.p01 + t.p10 + t.p11 <= 1.0 + 1e-10);
  CHECK(t.captured_mass <= 1.0 + 1e-10);
  CHECK(t.projected.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(numerics::hermitian_eigenvalues(t.projected)(0) >= -1e-12);
}

TEST_CASE("qubit projection of the lossy displaced-back state at eta_t = 1/2") {
  // loss on B, then D_a(-alpha) and D_b(-sqrt(eta) alpha): the two-branch mixture
  // gives p00 = 1/4, p01 = 1/4, p10 = 1/2, p11 = 0.
  const double alpha = 0.9, eta = 0.5;
  const int d = fock::recommended_cutoff(alpha) + 4;
  auto rho = DensityOperator::from_state(fock::build_output_state(alpha, d, d));
  rho = channels::apply_channel(rho, channels::loss_channel(eta, d), Mode::B);
  rho = apply_local(fock::displacement(-alpha, d), fock::displacement(-std::sqrt(eta) * alpha, d), rho);
  rho.matrix /= rho.trace_real();
  const auto t = project_qubit_subspace(rho);
  CHECK(t.p00 == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(t.p01 == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(t.p10 == doctest::Approx(0.50).epsilon(1e-8));
  CHECK(t.p11 <= 1e-8);
}

TEST_CASE("Wootters concurrence: Bell one, maximally mixed zero") {
  CHECK(wootters_concurrence(bell_minus().matrix) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(wootters_concurrence(ComplexMatrix::Identity(4, 4) / 4.0) == 0.0);
}

TEST_CASE("Wootters concurrence matches the spectral oracle on Werner states") {
  for (double w : {0.2, 0.5, 0.9}) {
    const ComplexMatrix rho = w * bell_minus().matrix + (1.0 - w) * ComplexMatrix::Identity(4, 4) / 4.0;
    const double got = wootters_concurrence(rho);
    CHECK(got == doctest::Approx(concurrence_oracle(rho)).epsilon(1e-9));
    CHECK(got == doctest::Approx(std::max(0.0, (3.0 * w - 1.0) / 2.0)).epsilon(1e-9));
  }
}

TEST_CASE("Wootters concurrence matches the oracle on random two-qubit densities") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = Complex(g(rng), g(rng));
    ComplexMatrix rho = m * m.adjoint();
    rho /= rho.trace().real();
    CHECK(wootters_concurrence(rho) == doctest::Approx(concurrence_oracle(rho)).epsilon(1e-8));
  }
}

TEST_CASE("Chou bound: ideal value, clamping, soundness on a lossy state") {
  QubitSubspaceTomogram ideal;
  ideal.visibility = 1.0;
  ideal.p01 = ideal.p10 = 0.5;
  CHECK(chou_concurrence_bound(ideal) == doctest::Approx(1.0).epsilon(1e-14));

  QubitSubspaceTomogram clamped;
  clamped.visibility = 1.0;
  clamped.p01 = clamped.p10 = 0.05;
  clamped.p00 = clamped.p11 = 0.45;
  CHECK(chou_concurrence_bound(clamped) == 0.0);

  const double alpha = 0.8, eta = 0.6;
  const int d = fock::recommended_cutoff(alpha) + 4;
  auto rho = DensityOperator::from_state(fock::build_output_state(alpha, d, d));
  rho = channels::apply_channel(rho, channels::loss_channel(eta, d), Mode::B);
  rho = apply_local(fock::displacement(-alpha, d), fock::displacement(-std::sqrt(eta) * alpha, d), rho);
  rho.matrix /= rho.trace_real();
  const auto t = project_qubit_subspace(rho);
  CHECK(chou_concurrence_bound(t) <= wootters_concurrence(t.projected) + 1e-8);
}

TEST_CASE("interference visibility: pure one, incoherent zero, coherence 2|c|") {
  CHECK(interference_visibility(bell_minus()) == doctest::Approx(1.0).epsilon(1e-9));

  ComplexMatrix mixed = ComplexMatrix::Zero(4, 4);
  mixed(1, 1) = 0.5;
  mixed(2, 2) = 0.5;
  CHECK(interference_visibility(DensityOperator::from_matrix(mixed, 2, 2)) <= 1e-9);

  // partially dephased one-photon state with off-diagonal coherence c
  ComplexMatrix partial = ComplexMatrix::Zero(4, 4);
  partial(1, 1) = 0.5;
  partial(2, 2) = 0.5;
  partial(1, 2) = 0.31;  // real: the extremal phases sit on the sweep grid
  partial(2, 1) = 0.31;
  const double vis = interference_visibility(DensityOperator::from_matrix(partial, 2, 2));
  CHECK(vis == doctest::Approx(2.0 * 0.31).epsilon(1e-9));

  // a complex coherence puts the extrema between grid points; the 256-step
  // sweep is still good to (pi/256)^2/2 relative
  partial(1, 2) = Complex(0.25, 0.17);
  partial(2, 1) = std::conj(partial(1, 2));
  const double vis_complex = interference_visibility(DensityOperator::from_matrix(partial, 2, 2));
  CHECK(vis_complex == doctest::Approx(2.0 * std::abs(partial(1, 2))).epsilon(1e-4));
}

TEST_CASE("interference visibility signals the absence of one-photon population") {
  ComplexMatrix vac = ComplexMatrix::Zero(4, 4);
  vac(0, 0) = 1.0;
  CHECK_THROWS_AS(interference_visibility(DensityOperator::from_matrix(vac, 2, 2)),
                  NoInterferenceError);
}
