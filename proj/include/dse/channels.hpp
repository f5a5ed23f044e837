#pragma once

#include "dse/fock.hpp"

#include <cstdint>

namespace dse::channels {

/// Completely positive trace-preserving map as a finite Kraus set.
struct KrausChannel {
  std::vector<ComplexMatrix> ops;
  double eta = 1.0;
  int dim = 0;
  /// max |sum K^dag K - I|
  double completeness_defect() const;
};

/// Photon loss with transmission eta, modeled as a beam-splitter to an
/// unobserved vacuum mode: <n-k|K_k|n> = sqrt(C(n,k) eta^(n-k) (1-eta)^k).
KrausChannel loss_channel(double eta, fock::FockCutoff dim);

/// sum_k (I (x) K_k) rho (I (x) K_k)^dag on the chosen mode.
fock::DensityOperator apply_channel(const fock::DensityOperator& rho, const KrausChannel& ch,
                                    fock::Mode mode);

/// Same map on a bare single-mode matrix.
ComplexMatrix apply_channel_single_mode(const ComplexMatrix& rho, const KrausChannel& ch);

/// Distribution of the relative phase between the two arms plus the rule
/// used to average over it.
struct PhaseNoiseModel {
  enum class Kind { Delta, Gaussian };
  Kind kind = Kind::Delta;
  double variance = 0.0;  // rad^2
  numerics::QuadratureRule rule;

  static PhaseNoiseModel delta();
  static PhaseNoiseModel gaussian(double variance, int n_nodes = 41);
};

enum class Frame { Lab, Displaced };

/// Lab-frame state after a relative phase phi on arm A:
/// (e^{i phi} D_A(alpha e^{i phi})|1>|alpha> - |alpha e^{i phi}> D_B(alpha)|1>)/sqrt(2).
fock::TwoModeState phase_shifted_output(Complex alpha, double phi, fock::FockCutoff dim_a,
                                        fock::FockCutoff dim_b);

/// The same state after the common displacement D_A(-alpha) (x) D_B(-alpha):
/// with beta = alpha (e^{i phi} - 1), up to a global phase,
/// (e^{i phi} D_A(beta)|1>|0> - |beta>|1>)/sqrt(2). Mode B never leaves
/// {|0>,|1>}, which is what makes large |alpha| tractable.
fock::TwoModeState displaced_frame_component(Complex alpha, double phi, fock::FockCutoff dim_a,
                                             fock::FockCutoff dim_b);

struct DephasingOptions {
  Frame frame = Frame::Lab;
  /// Quadrature nodes below this weight are dropped (their total mass is
  /// counted against the leakage budget).
  double node_weight_floor = 1e-14;
  /// Bound on the trace-norm error of the assembled mixture from per-node
  /// truncation, sum_i w_i * 2 sqrt(leak_i) plus dropped mass.
  double mixture_leakage_budget = 1e-7;
  /// Norm deficiency below this is roundoff in the norm itself, not
  /// truncation, and does not count against the budget.
  double leakage_floor = 1e-13;
};

/// Quadrature-weighted mixture of the phase-shifted states. In the displaced
/// frame the common displacement D(-alpha) (x) D(-alpha) acts identically on
/// every component, so the negativity is preserved exactly.
fock::DensityOperator dephased_state(Complex alpha, const PhaseNoiseModel& noise,
                                     fock::FockCutoff dim_a, fock::FockCutoff dim_b,
                                     const DephasingOptions& opt = {});

/// Single photon through loss_channel(eta_c), then the 50:50 beam-splitter
/// with the coherent input |sqrt(2) alpha>.
fock::DensityOperator coupling_loss_state(Complex alpha, double eta_c, fock::FockCutoff dim_a,
                                          fock::FockCutoff dim_b);

/// Monte Carlo counterpart of dephased_state: phases drawn from N(0, variance)
/// with a fixed seed. Validation only; the quadrature path is the product.
fock::DensityOperator dephased_state_monte_carlo(Complex alpha, double variance, int n_samples,
                                                 std::uint64_t seed, fock::FockCutoff dim_a,
                                                 fock::FockCutoff dim_b, Frame frame = Frame::Lab);

}  // namespace dse::channels
