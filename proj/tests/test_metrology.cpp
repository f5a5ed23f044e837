#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dse/channels.hpp"
#include "dse/metrology.hpp"

#include <cmath>
#include <random>

using namespace dse;
using namespace dse::metrology;
using fock::DensityOperator;
using fock::Mode;
using fock::TwoModeState;

namespace {

// independent route: s = -tr [n, rho]^2 via explicit matrix products
double sensitivity_oracle(const DensityOperator& rho, Mode mode) {
  const ComplexMatrix number = mode == Mode::A
                                   ? fock::tensor_product(fock::number_operator(rho.dim_a).matrix,
                                                          ComplexMatrix::Identity(rho.dim_b, rho.dim_b))
                                   : fock::tensor_product(ComplexMatrix::Identity(rho.dim_a, rho.dim_a),
                                                          fock::number_operator(rho.dim_b).matrix);
  const ComplexMatrix comm = number * rho.matrix - rho.matrix * number;
  return -(comm * comm).trace().real();
}

DensityOperator random_pure_density(int da, int db, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexVector psi(static_cast<Eigen::Index>(da) * db);
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = Complex(g(rng), g(rng));
  psi.normalize();  // a genuine state of the finite space, nothing truncated away
  return DensityOperator::from_state(TwoModeState::from_amplitudes(std::move(psi), da, db));
}

DensityOperator lossy_output_state(double alpha, double eta) {
  const int d = fock::recommended_cutoff(alpha);
  auto rho = DensityOperator::from_state(fock::build_output_state(alpha, d, d));
  const auto ch = channels::loss_channel(eta, d);
  rho = channels::apply_channel(rho, ch, Mode::A);
  rho = channels::apply_channel(rho, ch, Mode::B);
  return rho;
}

}  // namespace

TEST_CASE("Fock states are phase-insensitive") {
  ComplexVector fock3 = ComplexVector::Zero(12);
  fock3(3) = 1.0;
  const auto rho = DensityOperator::from_state(
      TwoModeState::product(fock3, fock::coherent_state(0.0, 2)));
  CHECK(sensitivity(rho, Mode::A).s <= 1e-12);
}

TEST_CASE("coherent state sensitivity is twice its mean photon number") {
  const double alpha = 1.0;
  const int d = fock::recommended_cutoff(alpha);
  const auto rho = DensityOperator::from_state(
      TwoModeState::product(fock::coherent_state(alpha, d), fock::coherent_state(0.0, 2)));
  const auto report = sensitivity(rho, Mode::A);
  CHECK(report.s == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(report.classical_s == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(report.var_n == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pure states obey s = 2 Var(n), here the output state") {
  const double alpha = 1.0;
  const int d = fock::recommended_cutoff(alpha);
  const auto rho = DensityOperator::from_state(fock::build_output_state(alpha, d, d));
  const auto report = sensitivity(rho, Mode::A);
  CHECK(report.s == doctest::Approx(2.0 * report.var_n).epsilon(1e-8));
  // mode-A variance of the output state is 2 alpha^2 + 1/4 exactly
  CHECK(report.var_n == doctest::Approx(2.0 * alpha * alpha + 0.25).epsilon(1e-9));
}

TEST_CASE("s = 2 Var(n) on random pure two-mode states") {
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto rho = random_pure_density(6, 6, 1000 + seed);
    const auto report = sensitivity(rho, Mode::A);
    CHECK(report.s == doctest::Approx(2.0 * report.var_n).epsilon(1e-8));
  }
}

TEST_CASE("sensitivity agrees with the commutator-product route and ignores phases") {
  const auto pure = random_pure_density(5, 7, 42);
  CHECK(sensitivity(pure, Mode::A).s == doctest::Approx(sensitivity_oracle(pure, Mode::A)).epsilon(1e-10));
  CHECK(sensitivity(pure, Mode::B).s == doctest::Approx(sensitivity_oracle(pure, Mode::B)).epsilon(1e-10));

  // mixed state: dephased, where the variance shortcut would be wrong
  const auto noise = channels::PhaseNoiseModel::gaussian(0.05, 21);
  const auto mixed = channels::dephased_state(0.8, noise, 17, 17, {});
  const double s_mixed = sensitivity(mixed, Mode::A).s;
  CHECK(s_mixed == doctest::Approx(sensitivity_oracle(mixed, Mode::A)).epsilon(1e-9));
  CHECK(s_mixed < 2.0 * sensitivity(mixed, Mode::A).var_n);  // strictly below for this mixture

  // phase rotations leave s untouched
  for (double phi : {0.4, 2.0}) {
    const auto rotated = apply_local(fock::phase_rotation(phi, mixed.dim_a),
                                     fock::identity_operator(mixed.dim_b), mixed);
    CHECK(sensitivity(rotated, Mode::A).s == doctest::Approx(s_mixed).epsilon(1e-9));
  }
}

TEST_CASE("sensitivity rejects states with real truncation leakage") {
  // a coherent state squeezed into far too few levels
  const auto rho = DensityOperator::from_state(
      TwoModeState::product(fock::coherent_state(2.0, 6), fock::coherent_state(0.0, 2)));
  CHECK(rho.leakage > 1e-7);
  CHECK_THROWS_AS(sensitivity(rho, Mode::A), CutoffError);
}

TEST_CASE("lossy sensitivity slope: closed form against the full simulation") {
  // slope in alpha^2 extracted by finite differences with loss on both modes
  for (double eta : {0.6, 0.85}) {
    const double s3 = sensitivity(lossy_output_state(std::sqrt(3.0), eta), Mode::A).s;
    const double s5 = sensitivity(lossy_output_state(std::sqrt(5.0), eta), Mode::A).s;
    const double slope = (s5 - s3) / 2.0;
    CHECK(slope == doctest::Approx(lossy_dse_sensitivity(1.0, eta)).epsilon(1e-6));
  }
}

TEST_CASE("lossy sensitivity: doubled at eta = 1, classical at eta = 3/4, below at 1/2") {
  const double alpha2 = 3.7;
  CHECK(lossy_dse_sensitivity(alpha2, 1.0) == doctest::Approx(4.0 * alpha2).epsilon(1e-14));
  CHECK(lossy_dse_sensitivity(alpha2, 0.75) == doctest::Approx(2.0 * 0.75 * alpha2).epsilon(1e-14));
  CHECK(lossy_dse_sensitivity(alpha2, 0.5) < 2.0 * 0.5 * alpha2);
}

TEST_CASE("slope beats the classical one exactly above eta = 3/4") {
  for (int i = 0; i <= 40; ++i) {
    const double eta = 0.5 + 0.0125 * i;
    const double dse_slope = lossy_dse_sensitivity(1.0, eta);
    const double classical = 2.0 * eta;
    if (eta > 0.75 + 1e-12) CHECK(dse_slope > classical);
    else if (eta < 0.75 - 1e-12) CHECK(dse_slope < classical);
    else CHECK(dse_slope == doctest::Approx(classical).epsilon(1e-12));
  }
}

TEST_CASE("N00N loss thresholds") {
  CHECK(noon_loss_threshold(2) == doctest::Approx(1.0).epsilon(1e-14));
  const double loss100 = 1.0 - noon_loss_threshold(100);
  CHECK(loss100 >= 0.018);
  CHECK(loss100 <= 0.021);
  const double loss1000 = 1.0 - noon_loss_threshold(1000);
  CHECK(loss1000 >= 0.0028);
  CHECK(loss1000 <= 0.0033);
  CHECK_THROWS_AS(noon_loss_threshold(0), NumericsError);
}

TEST_CASE("cloner separability threshold") {
  CHECK(cloner_separability_threshold(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cloner_separability_threshold(0.0) == 0.0);
  CHECK(cloner_separability_threshold(99.0) == doctest::Approx(0.99).epsilon(1e-14));
}

TEST_CASE("photon-number variance identities of the output state") {
  // Exact statements behind the factor-of-two comparison: the total
  // variance is 2 alpha^2, the per-mode variance 2 alpha^2 + 1/4, and the
  // per-mode ratio against a mean-matched coherent state approaches 2 with
  // a 3/(4(2 alpha^2 + 1)) correction.
  for (double alpha : {1.0, 2.0, 3.0}) {
    const int d = fock::recommended_cutoff(alpha) + 4;
    const auto psi = fock::build_output_state(alpha, d, d);
    const auto total = fock::total_photon_statistics(psi);
    CHECK(total.variance == doctest::Approx(2.0 * alpha * alpha).epsilon(1e-7));
    CHECK(total.mean == doctest::Approx(2.0 * alpha * alpha + 1.0).epsilon(1e-9));

    const auto mode_a = fock::mode_photon_statistics(psi, Mode::A);
    CHECK(mode_a.variance == doctest::Approx(2.0 * alpha * alpha + 0.25).epsilon(1e-7));
    const double coherent_var = mode_a.mean;  // Poisson: variance equals the mean
    const double ratio = mode_a.variance / coherent_var;
    CHECK(std::abs(2.0 - ratio - 0.75 / (alpha * alpha + 0.5)) <= 1e-7);
  }
}
