#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dse {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical failure in a kernel: violated precondition, divergence, or an
/// input outside the supported domain.
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fock-space truncation too small for the requested accuracy. Carries the
/// measured leakage so callers can enlarge the cutoff.
struct CutoffError : NumericsError {
  double leakage;
  CutoffError(const std::string& msg, double leak) : NumericsError(msg), leakage(leak) {}
};

namespace numerics {

/// max_ij |m_ij - conj(m_ji)|
double hermiticity_defect(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);
bool is_unitary(const ComplexMatrix& m, double tol = 1e-10);

struct EigenSystem {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // column k pairs with eigenvalues[k], orthonormal
};

/// Full eigendecomposition of a Hermitian matrix. The input is accepted when
/// its hermiticity defect stays below 1e-10 relative to the largest entry;
/// otherwise the matrix is rejected with the measured asymmetry.
EigenSystem hermitian_eigen(const ComplexMatrix& m);

/// Eigenvalues only (ascending); same preconditions as hermitian_eigen.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// exp(m) for square m by scaling-and-squaring with a truncated power series.
/// The scaled norm is kept at or below 1/2 so the series error stays far
/// below 1e-12 at any norm that arises here.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);

/// Discretization of a probability density over a relative phase.
struct QuadratureRule {
  std::vector<double> nodes;    // rad
  std::vector<double> weights;  // nonnegative, sum to 1
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Hermite rule for a centered normal density with the given variance
/// (rad^2): exact for polynomials up to degree 2*n_nodes-1. Zero variance
/// collapses to the single node phi = 0.
QuadratureRule gaussian_quadrature(double variance, int n_nodes);

/// Point mass at phi = 0.
QuadratureRule delta_rule();

}  // namespace numerics
}  // namespace dse
