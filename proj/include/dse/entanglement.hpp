#pragma once

#include "dse/fock.hpp"

namespace dse::entanglement {

/// Thrown by interference_visibility when the state has no one-photon
/// population to interfere.
struct NoInterferenceError : NumericsError {
  using NumericsError::NumericsError;
};

/// Absolute sum of the negative eigenvalues of the partial transpose,
/// equivalently (||rho^Gamma||_1 - 1)/2. Eigenvalues above -1e-12 count as
/// numerical noise.
double negativity(const fock::DensityOperator& rho);

/// <v|rho^Gamma|v>. Always at least -negativity(rho).
double witness_overlap(const fock::DensityOperator& rho, const fock::TwoModeState& v);

/// D_A(alpha) D_B(alpha) (|00> + |11>)/sqrt(2): the vector that saturates
/// <v|rho^Gamma|v> >= -N at -1/2 on the ideal output state under this
/// beam-splitter convention.
fock::TwoModeState saturating_witness_vector(Complex alpha, fock::FockCutoff dim_a,
                                             fock::FockCutoff dim_b);

/// Detection summary of the {|0>,|1>} x {|0>,|1>} block.
struct QubitSubspaceTomogram {
  double p00 = 0.0, p01 = 0.0, p10 = 0.0, p11 = 0.0;
  double visibility = 0.0;
  /// Probability mass inside the two-qubit block; the rest of the state is
  /// reported here rather than folded into p11.
  double captured_mass = 0.0;
  /// Renormalized 4x4 block, basis order |00>,|01>,|10>,|11>.
  ComplexMatrix projected;
};

/// p_mn = <mn|rho|mn>, the renormalized 4x4 block, and the interference
/// visibility of the one-photon subspace (0 when there is none).
QubitSubspaceTomogram project_qubit_subspace(const fock::DensityOperator& rho);

/// Wootters concurrence of a 4x4 density matrix: max{0, l1 - l2 - l3 - l4}
/// with l_i the sorted square roots of the eigenvalues of
/// rho (sy (x) sy) rho* (sy (x) sy).
double wootters_concurrence(const ComplexMatrix& rho4);

/// C >= max{0, V (p01 + p10) - 2 sqrt(p00 p11)}.
double chou_concurrence_bound(const QubitSubspaceTomogram& t);

/// Recombine the modes on a 50:50 beam-splitter after a phase sweep over
/// 256 steps and report (max - min)/(max + min) of the single-detector
/// click probability in the one-photon subspace.
double interference_visibility(const fock::DensityOperator& rho);

}  // namespace dse::entanglement
