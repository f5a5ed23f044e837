#include "dse/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace dse::entanglement {

using fock::DensityOperator;
using fock::FockCutoff;
using fock::Mode;
using fock::TwoModeState;

double negativity(const DensityOperator& rho) {
  const ComplexMatrix pt = fock::partial_transpose(rho);
  const RealVector ev = numerics::hermitian_eigenvalues(pt);
  double neg = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-12) neg -= ev(i);
  }
  return neg;
}

double witness_overlap(const DensityOperator& rho, const TwoModeState& v) {
  if (v.dim_a != rho.dim_a || v.dim_b != rho.dim_b)
    throw NumericsError("witness_overlap: vector dims do not match density dims");
  const ComplexMatrix pt = fock::partial_transpose(rho);
  const Complex val = v.amps.dot(pt * v.amps);
  if (std::abs(val.imag()) > 1e-9)
    throw NumericsError("witness_overlap: overlap has imaginary part " + std::to_string(val.imag()));
  return val.real();
}

TwoModeState saturating_witness_vector(Complex alpha, FockCutoff dim_a, FockCutoff dim_b) {
  ComplexVector bell = ComplexVector::Zero(static_cast<Eigen::Index>(dim_a.dim) * dim_b.dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  bell(0) = inv_sqrt2;
  bell(static_cast<Eigen::Index>(dim_b.dim) + 1) = inv_sqrt2;
  TwoModeState v = TwoModeState::from_amplitudes(std::move(bell), dim_a.dim, dim_b.dim, false);
  if (alpha == Complex(0.0, 0.0)) return v;
  return apply_local(fock::displacement(alpha, dim_a), fock::displacement(alpha, dim_b), v);
}

double wootters_concurrence(const ComplexMatrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4)
    throw NumericsError("wootters_concurrence: expected a 4x4 density matrix");
  // sigma_y (x) sigma_y has a single antidiagonal {-1, 1, 1, -1}.
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  // Eigenvalues of rho * yy rho* yy match those of the Hermitian
  // sqrt(rho) (yy rho* yy) sqrt(rho), which keeps everything inside the
  // Hermitian solver.
  const auto es = numerics::hermitian_eigen(rho4);
  ComplexMatrix sqrt_rho = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const double lam = std::max(0.0, es.eigenvalues(i));
    sqrt_rho += std::sqrt(lam) * (es.eigenvectors.col(i) * es.eigenvectors.col(i).adjoint());
  }
  const ComplexMatrix spin_flipped = yy * rho4.conjugate() * yy;
  const ComplexMatrix m = sqrt_rho * spin_flipped * sqrt_rho;
  RealVector ev = numerics::hermitian_eigenvalues((m + m.adjoint()) / 2.0);

  double lams[4];
  for (int i = 0; i < 4; ++i) lams[i] = std::sqrt(std::max(0.0, ev(3 - i)));  // descending
  return std::max(0.0, lams[0] - lams[1] - lams[2] - lams[3]);
}

double chou_concurrence_bound(const QubitSubspaceTomogram& t) {
  return std::max(0.0, t.visibility * (t.p01 + t.p10) - 2.0 * std::sqrt(t.p00 * t.p11));
}

double interference_visibility(const DensityOperator& rho) {
  // Recombination needs equal cutoffs; embed the smaller mode if necessary.
  const int d = std::max(rho.dim_a, rho.dim_b);
  ComplexMatrix padded;
  const ComplexMatrix* mat = &rho.matrix;
  if (rho.dim_a != rho.dim_b) {
    padded = ComplexMatrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
    for (int a = 0; a < rho.dim_a; ++a)
      for (int b = 0; b < rho.dim_b; ++b)
        for (int c = 0; c < rho.dim_a; ++c)
          for (int e = 0; e < rho.dim_b; ++e)
            padded(static_cast<Eigen::Index>(a) * d + b, static_cast<Eigen::Index>(c) * d + e) =
                rho.matrix(static_cast<Eigen::Index>(a) * rho.dim_b + b,
                           static_cast<Eigen::Index>(c) * rho.dim_b + e);
    mat = &padded;
  }

  const ComplexMatrix bs = fock::beam_splitter_50_50(d, d);
  // Click probability q(theta) = <10| B (U_theta (x) I) rho (.)^dag |10>
  // = u(theta)^dag rho u(theta) with u(theta) = (U_theta (x) I)^dag B^dag |10>.
  const ComplexVector base = bs.adjoint().col(static_cast<Eigen::Index>(d));  // B^dag |1,0>

  constexpr int kSteps = 256;
  double qmax = -1.0, qmin = 2.0;
  ComplexVector u(base.size());
  for (int s = 0; s < kSteps; ++s) {
    const double theta = 2.0 * M_PI * s / kSteps;
    for (int a = 0; a < d; ++a) {
      const Complex ph = std::polar(1.0, -theta * a);
      for (int b = 0; b < d; ++b) u(static_cast<Eigen::Index>(a) * d + b) = ph * base(static_cast<Eigen::Index>(a) * d + b);
    }
    const double q = u.dot((*mat) * u).real();
    qmax = std::max(qmax, q);
    qmin = std::min(qmin, q);
  }
  const double denom = qmax + qmin;
  if (denom <= 1e-12)
    throw NoInterferenceError("interference_visibility: no one-photon population to interfere");
  return (qmax - qmin) / denom;
}

QubitSubspaceTomogram project_qubit_subspace(const DensityOperator& rho) {
  QubitSubspaceTomogram t;
  const int db = rho.dim_b;
  const Eigen::Index idx[4] = {0, 1, static_cast<Eigen::Index>(db), static_cast<Eigen::Index>(db) + 1};
  t.p00 = rho.matrix(idx[0], idx[0]).real();
  t.p01 = rho.matrix(idx[1], idx[1]).real();
  t.p10 = rho.matrix(idx[2], idx[2]).real();
  t.p11 = rho.matrix(idx[3], idx[3]).real();

  ComplexMatrix block(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) block(r, c) = rho.matrix(idx[r], idx[c]);
  t.captured_mass = block.trace().real();
  if (t.captured_mass > 0.0) t.projected = block / t.captured_mass;
  else t.projected = ComplexMatrix::Zero(4, 4);

  try {
    t.visibility = interference_visibility(rho);
  } catch (const NoInterferenceError&) {
    t.visibility = 0.0;
  }
  return t;
}

}  // namespace dse::entanglement
