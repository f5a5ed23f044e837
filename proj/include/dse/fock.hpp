#pragma once

#include "dse/numerics.hpp"

#include <string>

namespace dse::fock {

enum class Mode { A, B };

/// Truncated single-mode dimension: basis |0> .. |dim-1>.
struct FockCutoff {
  int dim;
  FockCutoff(int d) : dim(d) {
    if (d < 2) throw NumericsError("FockCutoff: dim must be at least 2");
  }
};

/// Smallest per-mode cutoff expected to keep a displaced state's truncation
/// leakage below ~1e-8: ceil(|alpha|^2 + 6|alpha| + 12).
int recommended_cutoff(double alpha_abs);

struct ModeOperator {
  enum class Label { Annihilation, Creation, Number, Displacement, PhaseRotation, Identity, Custom };
  ComplexMatrix matrix;
  Label label = Label::Custom;
  /// max |U U^dag - I| measured at construction for unitary-by-intent
  /// operators (displacement, phase rotation); NaN otherwise.
  double unitarity_defect = std::numeric_limits<double>::quiet_NaN();
  int dim() const { return static_cast<int>(matrix.rows()); }
};

ModeOperator annihilation(FockCutoff dim);
ModeOperator creation(FockCutoff dim);
ModeOperator number_operator(FockCutoff dim);
ModeOperator identity_operator(FockCutoff dim);
/// exp(alpha a^dag - conj(alpha) a) on the truncated space; the unitarity
/// defect of the truncated matrix is measured and stored, never assumed.
ModeOperator displacement(Complex alpha, FockCutoff dim);
/// exp(i phi a^dag a)
ModeOperator phase_rotation(double phi, FockCutoff dim);

/// Coherent-state amplitudes alpha^n e^{-|alpha|^2/2}/sqrt(n!) (closed form;
/// the displacement-operator route is checked against this in tests).
ComplexVector coherent_state(Complex alpha, FockCutoff dim);

struct PhotonStats {
  double mean;
  double variance;
};
PhotonStats photon_statistics(const ComplexVector& single_mode_state);

/// Pure state of two truncated modes, amplitudes flattened n_A-major:
/// flat index = n_A * dim_b + n_B.
struct TwoModeState {
  ComplexVector amps;
  int dim_a = 0;
  int dim_b = 0;
  /// Probability mass lost to truncation, as reported by the builder.
  double leakage = 0.0;

  Complex amp(int na, int nb) const { return amps(static_cast<Eigen::Index>(na) * dim_b + nb); }
  double norm() const { return amps.norm(); }

  static TwoModeState from_amplitudes(ComplexVector amps, int dim_a, int dim_b, bool renormalize = true);
  static TwoModeState product(const ComplexVector& mode_a, const ComplexVector& mode_b);
};

PhotonStats mode_photon_statistics(const TwoModeState& s, Mode mode);
PhotonStats total_photon_statistics(const TwoModeState& s);

/// Mixed state over the flattened (n_A, n_B) basis.
struct DensityOperator {
  ComplexMatrix matrix;
  int dim_a = 0;
  int dim_b = 0;
  double leakage = 0.0;

  double trace_real() const { return matrix.trace().real(); }
  int size() const { return dim_a * dim_b; }
  static DensityOperator from_state(const TwoModeState& s);
  static DensityOperator from_matrix(ComplexMatrix m, int dim_a, int dim_b);
  /// Hermiticity (1e-10), unit trace (1e-10) and positivity (lowest
  /// eigenvalue above -1e-9) checks; throws NumericsError on violation.
  void validate() const;
};

PhotonStats mode_photon_statistics(const DensityOperator& rho, Mode mode);
PhotonStats total_photon_statistics(const DensityOperator& rho);

/// 50:50 beam-splitter unitary fixed by the convention a -> (a-b)/sqrt(2),
/// b -> (a+b)/sqrt(2) for the mode operators, the direction that sends
/// |1,0> to (|1,0> - |0,1>)/sqrt(2). Built sector-by-sector in the total
/// photon number, which the generator conserves.
ComplexMatrix beam_splitter_50_50(FockCutoff dim_a, FockCutoff dim_b);

/// The displaced single-photon entangled state
/// (D_A(alpha)|1>|alpha> - |alpha> D_B(alpha)|1>)/sqrt(2), built directly
/// from its two branches. Rejects cutoffs whose measured leakage exceeds
/// leakage_bound.
TwoModeState build_output_state(Complex alpha, FockCutoff dim_a, FockCutoff dim_b,
                                double leakage_bound = 1e-8);

/// Same state with the cutoff grown from recommended_cutoff until the
/// measured leakage drops below the bound.
TwoModeState build_output_state_adaptive(Complex alpha, double leakage_bound = 1e-8,
                                         int max_dim = 4096);

TwoModeState apply_local(const ModeOperator& op_a, const ModeOperator& op_b, const TwoModeState& s);
DensityOperator apply_local(const ModeOperator& op_a, const ModeOperator& op_b, const DensityOperator& rho);

/// Kronecker product in the n_A-major flattening.
ComplexMatrix tensor_product(const ComplexMatrix& op_a, const ComplexMatrix& op_b);

/// Trace out the other mode; the result keeps dim_b = 1.
DensityOperator partial_trace(const DensityOperator& rho, Mode keep);

/// Transposition of one mode's indices. Preserves Hermiticity and trace.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, int dim_a, int dim_b, Mode mode = Mode::B);
ComplexMatrix partial_transpose(const DensityOperator& rho, Mode mode = Mode::B);

std::string to_json(const TwoModeState& s);
std::string to_json(const DensityOperator& rho);
TwoModeState state_from_json(const std::string& text);
DensityOperator density_from_json(const std::string& text);

}  // namespace dse::fock
