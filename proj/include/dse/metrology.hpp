#pragma once

#include "dse/fock.hpp"

namespace dse::metrology {

struct SensitivityReport {
  /// Squared Frobenius norm of d rho_phi / d phi, via s = -tr [n, rho]^2.
  double s = 0.0;
  double mean_n = 0.0;
  double var_n = 0.0;
  /// Coherent-state baseline with the same mean photon number: 2 <n>.
  double classical_s = 0.0;
};

/// Sensitivity of the state to a phase rotation of the chosen mode. The
/// probed mode's top Fock level must hold less than 1e-7 population.
/// For pure states s equals 2 Var(n) on the probed mode.
SensitivityReport sensitivity(const fock::DensityOperator& rho, fock::Mode mode);

/// The |alpha|^2-proportional part of the lossy sensitivity,
/// 2 eta alpha2 (1 - 3 eta + 4 eta^2). The additive constant of the full
/// expression is not carried; every comparison here concerns the slope.
double lossy_dse_sensitivity(double alpha2, double eta);

/// Transmission below which an N-photon N00N state drops under the coherent
/// baseline: (2/N)^(1/(2N-1)).
double noon_loss_threshold(int n_photons);

/// Coupling efficiency at which cloner-based micro-macro entanglement
/// becomes separable: n/(n+1) for mean macro photon number n. The
/// beam-splitter scheme has no such cliff: its negativity ~eta_c^2/4 stays
/// positive for every eta_c > 0.
double cloner_separability_threshold(double n_macro);

}  // namespace dse::metrology
