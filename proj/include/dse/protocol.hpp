#pragma once

#include "dse/channels.hpp"
#include "dse/entanglement.hpp"

#include <optional>
#include <vector>

namespace dse::protocol {

struct ExperimentParams {
  double eta_c = 1.0;    // coupling efficiency of the single photon
  double eta_t = 1.0;    // global detection/transmission efficiency
  double epsilon = 0.0;  // 1 - V, phase-stability defect
  double alpha2 = 0.0;   // mean coherent photon number |alpha|^2

  double eta() const { return eta_c * eta_t; }
  double visibility() const { return 1.0 - epsilon; }
  void check() const;
};

/// N = eta_t / 2 after loss on mode B, independent of |alpha|.
double negativity_after_transmission_loss(double eta_t);

/// N = -1/2 (1 - eta_c - sqrt(1 - 2 (1 - eta_c) eta_c)), about eta_c^2/4
/// for small eta_c.
double negativity_after_coupling_loss(double eta_c);

/// Coherent-state entanglement baseline: N = 1/2 e^{-2 (1 - eta_t)|alpha|^2}.
double coherent_entanglement_negativity(double alpha2, double eta_t);

/// The phase-noise lower bound, both as printed and as independently
/// computed. The printed integrand does not reduce to 1/2 at zero noise
/// (it is negative there), so the witness value is the self-consistent
/// quantity; both are reported, neither is reconciled.
struct PhaseBound {
  /// Quadrature value of e^{-2 a2 (2 - cos phi)}/2 (a2 (1 - cos 2phi) - cos phi).
  double printed_integrand_value = 0.0;
  /// -<v|rho_bar^Gamma|v> with the saturating vector, from the full mixture.
  double witness_oracle = 0.0;
};
PhaseBound semi_analytic_phase_bound(double alpha2, const channels::PhaseNoiseModel& noise);

/// Closed-form witness value of one phase-shifted component,
/// e^{-2 a2 (1 - cos phi)}/2 (cos phi - a2 (1 - cos 2phi)); its quadrature
/// average reproduces the witness oracle.
double witness_integrand(double alpha2, double phi);

/// Gaussian approximation (2 - dphi)/(4 (1 + 2 alpha2 dphi)^{3/2}), with
/// dphi the variance in rad^2.
double gaussian_phase_bound_approx(double alpha2, double variance);

struct Fig2Row {
  double alpha2 = 0.0;
  double variance = 0.0;
  double negativity_numeric = 0.0;
  double bound_oracle = 0.0;
  double bound_gaussian = 0.0;
  bool flagged = false;  // cutoff failure at this grid point
};

struct Fig2Options {
  /// Hard per-mode cutoff cap for displaced-frame points; points whose
  /// truncation budget cannot be met under the cap are flagged.
  int cutoff_cap = 64;
  /// Quadrature nodes start here and double until the closed-form bound
  /// integral moves by less than 1e-9.
  int initial_nodes = 41;
  int max_node_doublings = 2;
  /// alpha^2 above which the displaced frame is used.
  double displaced_frame_threshold = 4.0;
};

/// One Fig. 2 grid: per point the numeric negativity of the dephased state,
/// the witness-oracle bound and the Gaussian approximation. Cutoff failures
/// flag the row and the sweep continues.
std::vector<Fig2Row> fig2_sweep(const std::vector<double>& alpha2_list,
                                const std::vector<double>& variance_grid,
                                const Fig2Options& opt = {});

/// C >= max{0, 1 - 10 (1 - Vbar)|alpha|^2} for a noisy common local
/// oscillator with interference visibility Vbar.
double lo_noise_concurrence_bound(double alpha2, double v_bar);

/// C >= max{0, eta - 2 sqrt(2 eta (1 - eta)) sqrt(eps eta_t alpha2)
///            - 2 (2 + 3 eta) eps eta_t alpha2}, eta = eta_c eta_t.
double experiment_concurrence_bound(const ExperimentParams& p);

struct AlphaThreshold {
  double value = 0.0;   // largest |alpha| with a positive bound
  bool unbounded = false;  // bound still positive at the search cap
};

/// Invert experiment_concurrence_bound over |alpha| by bisection (relative
/// tolerance 1e-6, bracket up to |alpha| = 200). Requires epsilon > 0 for a
/// finite answer; reports unbounded otherwise.
AlphaThreshold max_alpha_for_positive_bound(const ExperimentParams& p);

struct MeasurementSettings {
  double alpha = 1.0;
  double eta_c = 1.0;
  double eta_t = 1.0;
  channels::PhaseNoiseModel noise = channels::PhaseNoiseModel::delta();
  /// Full simulation guard: alpha^2 above this is rejected.
  double max_alpha2 = 16.0;
  std::optional<int> cutoff_override;
};

struct MeasurementResult {
  entanglement::QubitSubspaceTomogram tomogram;
  double chou_bound = 0.0;
  double wootters = 0.0;
  double negativity = 0.0;
};

/// End-to-end detection pipeline: coupling loss, beam-splitter, transmission
/// loss on mode B, phase-noisy common displacement D(-alpha) (x) D(-alpha),
/// then tomogram, visibility, Chou bound, Wootters concurrence of the
/// projected block and the full negativity.
MeasurementResult measurement_pipeline(const MeasurementSettings& s);

}  // namespace dse::protocol
