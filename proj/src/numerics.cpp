#include "dse/numerics.hpp"

#include <cmath>
#include <sstream>

namespace dse::numerics {

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return hermiticity_defect(m) <= tol * scale;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  ComplexMatrix g = m.adjoint() * m;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff() <= tol;
}

namespace {

void require_hermitian(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << who << ": matrix is " << m.rows() << "x" << m.cols() << ", not square";
    throw NumericsError(os.str());
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = hermiticity_defect(m);
  if (defect > 1e-10 * scale) {
    std::ostringstream os;
    os << who << ": input not Hermitian, max asymmetry |m_ij - conj(m_ji)| = " << defect
       << " exceeds " << 1e-10 * scale;
    throw NumericsError(os.str());
  }
}

}  // namespace

EigenSystem hermitian_eigen(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eigen");
  // Symmetrize so roundoff asymmetry cannot leak into the solver.
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericsError("hermitian_eigen: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eigenvalues");
  const ComplexMatrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericsError("hermitian_eigenvalues: solver did not converge");
  return solver.eigenvalues();
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw NumericsError("matrix_exp: input must be square");
  const Eigen::Index n = m.rows();
  if (n == 0) return ComplexMatrix(0, 0);

  // Scale until the 1-norm is at most 1/2, run the power series, square back.
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const ComplexMatrix a = m / std::pow(2.0, squarings);

  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  ComplexMatrix sum = term;
  constexpr int kMaxOrder = 32;  // series term at order 24 is ~1e-31 for norm 1/2
  for (int k = 1; k <= kMaxOrder; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

double trace_norm(const ComplexMatrix& m) {
  require_hermitian(m, "trace_norm");
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

QuadratureRule delta_rule() { return {{0.0}, {1.0}}; }

QuadratureRule gaussian_quadrature(double variance, int n_nodes) {
  if (variance < 0.0) throw NumericsError("gaussian_quadrature: variance must be nonnegative");
  if (n_nodes < 1) throw NumericsError("gaussian_quadrature: need at least one node");
  if (variance == 0.0) return delta_rule();

  // Golub-Welsch on the Jacobi matrix of the (physicists') Hermite weight:
  // nodes are its eigenvalues, weights the squared first eigenvector entries.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (int k = 1; k < n_nodes; ++k) {
    const double b = std::sqrt(k / 2.0);
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) throw NumericsError("gaussian_quadrature: Jacobi eigensolve failed");

  const double phase_scale = std::sqrt(2.0 * variance);
  QuadratureRule rule;
  rule.nodes.resize(n_nodes);
  rule.weights.resize(n_nodes);
  double wsum = 0.0;
  for (int i = 0; i < n_nodes; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i) * phase_scale;
    const double w = solver.eigenvectors()(0, i) * solver.eigenvectors()(0, i);
    rule.weights[i] = w;
    wsum += w;
  }
  for (double& w : rule.weights) w /= wsum;  // exact probability normalization
  return rule;
}

}  // namespace dse::numerics
