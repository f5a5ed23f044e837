#include "dse/fock.hpp"

#include "json.hpp"

#include <cmath>
#include <sstream>

namespace dse::fock {

namespace {

using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

RowMajorMap as_matrix(const ComplexVector& amps, int dim_a, int dim_b) {
  return RowMajorMap(amps.data(), dim_a, dim_b);
}

void require_dims(int got_a, int got_b, int want_a, int want_b, const char* who) {
  if (got_a != want_a || got_b != want_b) {
    std::ostringstream os;
    os << who << ": dimension mismatch, state is " << want_a << "x" << want_b << " but operators are "
       << got_a << "x" << got_b;
    throw NumericsError(os.str());
  }
}

}  // namespace

int recommended_cutoff(double alpha_abs) {
  const double a = std::abs(alpha_abs);
  return static_cast<int>(std::ceil(a * a + 6.0 * a + 12.0));
}

ModeOperator annihilation(FockCutoff dim) {
  ComplexMatrix m = ComplexMatrix::Zero(dim.dim, dim.dim);
  for (int n = 1; n < dim.dim; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {std::move(m), ModeOperator::Label::Annihilation};
}

ModeOperator creation(FockCutoff dim) {
  ModeOperator a = annihilation(dim);
  return {a.matrix.adjoint(), ModeOperator::Label::Creation};
}

ModeOperator number_operator(FockCutoff dim) {
  ComplexMatrix m = ComplexMatrix::Zero(dim.dim, dim.dim);
  for (int n = 0; n < dim.dim; ++n) m(n, n) = static_cast<double>(n);
  return {std::move(m), ModeOperator::Label::Number};
}

ModeOperator identity_operator(FockCutoff dim) {
  return {ComplexMatrix::Identity(dim.dim, dim.dim), ModeOperator::Label::Identity, 0.0};
}

ModeOperator displacement(Complex alpha, FockCutoff dim) {
  const ComplexMatrix a = annihilation(dim).matrix;
  const ComplexMatrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  ModeOperator op{numerics::matrix_exp(gen), ModeOperator::Label::Displacement};
  ComplexMatrix g = op.matrix * op.matrix.adjoint();
  g.diagonal().array() -= 1.0;
  op.unitarity_defect = g.cwiseAbs().maxCoeff();
  return op;
}

ModeOperator phase_rotation(double phi, FockCutoff dim) {
  ComplexMatrix m = ComplexMatrix::Zero(dim.dim, dim.dim);
  for (int n = 0; n < dim.dim; ++n) m(n, n) = std::polar(1.0, phi * n);
  return {std::move(m), ModeOperator::Label::PhaseRotation, 0.0};
}

ComplexVector coherent_state(Complex alpha, FockCutoff dim) {
  ComplexVector v(dim.dim);
  // log-scaled recurrence keeps large |alpha| finite
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  v(0) = amp;
  for (int n = 1; n < dim.dim; ++n) {
    amp *= alpha / std::sqrt(static_cast<double>(n));
    v(n) = amp;
  }
  return v;
}

PhotonStats photon_statistics(const ComplexVector& state) {
  double m1 = 0.0, m2 = 0.0, norm2 = 0.0;
  for (Eigen::Index n = 0; n < state.size(); ++n) {
    const double p = std::norm(state(n));
    norm2 += p;
    m1 += p * static_cast<double>(n);
    m2 += p * static_cast<double>(n) * static_cast<double>(n);
  }
  if (norm2 <= 0.0) throw NumericsError("photon_statistics: zero state");
  m1 /= norm2;
  m2 /= norm2;
  return {m1, m2 - m1 * m1};
}

TwoModeState TwoModeState::from_amplitudes(ComplexVector amps, int dim_a, int dim_b, bool renormalize) {
  if (amps.size() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw NumericsError("TwoModeState: amplitude count does not match dims");
  TwoModeState s;
  s.dim_a = dim_a;
  s.dim_b = dim_b;
  const double n = amps.norm();
  if (n == 0.0) throw NumericsError("TwoModeState: zero vector");
  s.leakage = std::abs(1.0 - n * n);
  s.amps = renormalize ? ComplexVector(amps / n) : std::move(amps);
  return s;
}

TwoModeState TwoModeState::product(const ComplexVector& mode_a, const ComplexVector& mode_b) {
  const int da = static_cast<int>(mode_a.size());
  const int db = static_cast<int>(mode_b.size());
  ComplexVector amps(static_cast<Eigen::Index>(da) * db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) amps(static_cast<Eigen::Index>(a) * db + b) = mode_a(a) * mode_b(b);
  return from_amplitudes(std::move(amps), da, db);
}

PhotonStats mode_photon_statistics(const TwoModeState& s, Mode mode) {
  double m1 = 0.0, m2 = 0.0;
  for (int a = 0; a < s.dim_a; ++a)
    for (int b = 0; b < s.dim_b; ++b) {
      const double p = std::norm(s.amp(a, b));
      const double n = static_cast<double>(mode == Mode::A ? a : b);
      m1 += p * n;
      m2 += p * n * n;
    }
  return {m1, m2 - m1 * m1};
}

PhotonStats total_photon_statistics(const TwoModeState& s) {
  double m1 = 0.0, m2 = 0.0;
  for (int a = 0; a < s.dim_a; ++a)
    for (int b = 0; b < s.dim_b; ++b) {
      const double p = std::norm(s.amp(a, b));
      const double n = static_cast<double>(a + b);
      m1 += p * n;
      m2 += p * n * n;
    }
  return {m1, m2 - m1 * m1};
}

DensityOperator DensityOperator::from_state(const TwoModeState& s) {
  DensityOperator rho;
  rho.matrix = s.amps * s.amps.adjoint();
  const double tr = rho.matrix.trace().real();
  rho.matrix /= tr;
  rho.dim_a = s.dim_a;
  rho.dim_b = s.dim_b;
  rho.leakage = s.leakage;
  return rho;
}

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, int dim_a, int dim_b) {
  if (m.rows() != m.cols() || m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw NumericsError("DensityOperator: matrix size does not match mode dims");
  DensityOperator rho;
  rho.matrix = std::move(m);
  rho.dim_a = dim_a;
  rho.dim_b = dim_b;
  return rho;
}

void DensityOperator::validate() const {
  const double hdef = numerics::hermiticity_defect(matrix);
  if (hdef > 1e-10)
    throw NumericsError("DensityOperator: hermiticity defect " + std::to_string(hdef));
  const double tdef = std::abs(matrix.trace() - Complex(1.0, 0.0));
  if (tdef > 1e-10) throw NumericsError("DensityOperator: trace deviates by " + std::to_string(tdef));
  const RealVector ev = numerics::hermitian_eigenvalues(matrix);
  if (ev(0) < -1e-9)
    throw NumericsError("DensityOperator: negative eigenvalue " + std::to_string(ev(0)));
}

namespace {

PhotonStats density_number_stats(const DensityOperator& rho, bool pick_a, bool total) {
  double m1 = 0.0, m2 = 0.0;
  for (int a = 0; a < rho.dim_a; ++a)
    for (int b = 0; b < rho.dim_b; ++b) {
      const Eigen::Index i = static_cast<Eigen::Index>(a) * rho.dim_b + b;
      const double p = rho.matrix(i, i).real();
      const double n = total ? static_cast<double>(a + b) : static_cast<double>(pick_a ? a : b);
      m1 += p * n;
      m2 += p * n * n;
    }
  return {m1, m2 - m1 * m1};
}

}  // namespace

PhotonStats mode_photon_statistics(const DensityOperator& rho, Mode mode) {
  return density_number_stats(rho, mode == Mode::A, false);
}

PhotonStats total_photon_statistics(const DensityOperator& rho) {
  return density_number_stats(rho, true, true);
}

ComplexMatrix beam_splitter_50_50(FockCutoff dim_a, FockCutoff dim_b) {
  if (dim_a.dim != dim_b.dim)
    throw NumericsError("beam_splitter_50_50: mode cutoffs must be equal");
  const int d = dim_a.dim;
  const double theta = M_PI / 4.0;

  ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  // The generator theta*(a^dag b - a b^dag) conserves n_A + n_B, so each
  // total-photon sector exponentiates independently.
  for (int total = 0; total <= 2 * (d - 1); ++total) {
    const int jmin = std::max(0, total - (d - 1));
    const int jmax = std::min(d - 1, total);
    const int m = jmax - jmin + 1;
    ComplexMatrix gen = ComplexMatrix::Zero(m, m);
    for (int r = 0; r + 1 < m; ++r) {
      const int j = jmin + r;  // (j, total-j) -> (j+1, total-j-1) under a^dag b
      const double c = theta * std::sqrt(static_cast<double>(j + 1) * (total - j));
      gen(r + 1, r) = c;
      gen(r, r + 1) = -c;
    }
    const ComplexMatrix block = numerics::matrix_exp(gen);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        const int jr = jmin + r, jc = jmin + c;
        u(static_cast<Eigen::Index>(jr) * d + (total - jr), static_cast<Eigen::Index>(jc) * d + (total - jc)) =
            block(r, c);
      }
  }
  return u;
}

TwoModeState build_output_state(Complex alpha, FockCutoff dim_a, FockCutoff dim_b, double leakage_bound) {
  const ComplexVector disp_one_a = displacement(alpha, dim_a).matrix.col(1);
  const ComplexVector disp_one_b = displacement(alpha, dim_b).matrix.col(1);
  const ComplexVector coh_a = coherent_state(alpha, dim_a);
  const ComplexVector coh_b = coherent_state(alpha, dim_b);

  ComplexVector amps(static_cast<Eigen::Index>(dim_a.dim) * dim_b.dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < dim_a.dim; ++a)
    for (int b = 0; b < dim_b.dim; ++b)
      amps(static_cast<Eigen::Index>(a) * dim_b.dim + b) =
          inv_sqrt2 * (disp_one_a(a) * coh_b(b) - coh_a(a) * disp_one_b(b));

  const double norm2 = amps.squaredNorm();
  const double leak = std::abs(1.0 - norm2);
  if (leak > leakage_bound) {
    std::ostringstream os;
    os << "build_output_state: truncation leakage " << leak << " exceeds bound " << leakage_bound
       << " at dims (" << dim_a.dim << "," << dim_b.dim << ")";
    throw CutoffError(os.str(), leak);
  }
  TwoModeState s = TwoModeState::from_amplitudes(std::move(amps), dim_a.dim, dim_b.dim);
  s.leakage = leak;
  return s;
}

TwoModeState build_output_state_adaptive(Complex alpha, double leakage_bound, int max_dim) {
  int dim = recommended_cutoff(std::abs(alpha));
  while (true) {
    try {
      return build_output_state(alpha, dim, dim, leakage_bound);
    } catch (const CutoffError&) {
      if (dim >= max_dim) throw;
      dim = std::min(max_dim, dim + std::max(4, dim / 4));
    }
  }
}

TwoModeState apply_local(const ModeOperator& op_a, const ModeOperator& op_b, const TwoModeState& s) {
  require_dims(op_a.dim(), op_b.dim(), s.dim_a, s.dim_b, "apply_local");
  const auto psi = as_matrix(s.amps, s.dim_a, s.dim_b);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out =
      op_a.matrix * psi * op_b.matrix.transpose();
  TwoModeState r;
  r.dim_a = s.dim_a;
  r.dim_b = s.dim_b;
  r.amps = ComplexVector(Eigen::Map<const ComplexVector>(out.data(), out.size()));
  const bool unitary_pair = !std::isnan(op_a.unitarity_defect) && !std::isnan(op_b.unitarity_defect);
  r.leakage = unitary_pair
                  ? s.leakage + std::abs(s.amps.squaredNorm() - r.amps.squaredNorm()) +
                        op_a.unitarity_defect + op_b.unitarity_defect
                  : std::numeric_limits<double>::quiet_NaN();
  return r;
}

ComplexMatrix tensor_product(const ComplexMatrix& op_a, const ComplexMatrix& op_b) {
  const Eigen::Index da = op_a.rows(), db = op_b.rows();
  ComplexMatrix w(da * op_b.rows(), op_a.cols() * op_b.cols());
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index c = 0; c < op_a.cols(); ++c)
      w.block(a * db, c * op_b.cols(), db, op_b.cols()) = op_a(a, c) * op_b;
  return w;
}

DensityOperator apply_local(const ModeOperator& op_a, const ModeOperator& op_b, const DensityOperator& rho) {
  require_dims(op_a.dim(), op_b.dim(), rho.dim_a, rho.dim_b, "apply_local");
  const ComplexMatrix w = tensor_product(op_a.matrix, op_b.matrix);
  DensityOperator out;
  out.matrix = w * rho.matrix * w.adjoint();
  out.dim_a = rho.dim_a;
  out.dim_b = rho.dim_b;
  out.leakage = rho.leakage;
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Mode keep) {
  const int da = rho.dim_a, db = rho.dim_b;
  const int dk = keep == Mode::A ? da : db;
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  if (keep == Mode::A) {
    for (int a = 0; a < da; ++a)
      for (int c = 0; c < da; ++c)
        for (int b = 0; b < db; ++b)
          out(a, c) += rho.matrix(static_cast<Eigen::Index>(a) * db + b, static_cast<Eigen::Index>(c) * db + b);
  } else {
    for (int b = 0; b < db; ++b)
      for (int e = 0; e < db; ++e)
        for (int a = 0; a < da; ++a)
          out(b, e) += rho.matrix(static_cast<Eigen::Index>(a) * db + b, static_cast<Eigen::Index>(a) * db + e);
  }
  DensityOperator r;
  r.matrix = std::move(out);
  r.dim_a = dk;
  r.dim_b = 1;
  r.leakage = rho.leakage;
  return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, int dim_a, int dim_b, Mode mode) {
  if (rho.rows() != rho.cols() || rho.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
    throw NumericsError("partial_transpose: matrix size does not match mode dims");
  ComplexMatrix out(rho.rows(), rho.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b)
      for (int c = 0; c < dim_a; ++c)
        for (int e = 0; e < dim_b; ++e) {
          const Eigen::Index r = static_cast<Eigen::Index>(a) * dim_b + b;
          const Eigen::Index s = static_cast<Eigen::Index>(c) * dim_b + e;
          out(r, s) = mode == Mode::B ? rho(static_cast<Eigen::Index>(a) * dim_b + e,
                                            static_cast<Eigen::Index>(c) * dim_b + b)
                                      : rho(static_cast<Eigen::Index>(c) * dim_b + b,
                                            static_cast<Eigen::Index>(a) * dim_b + e);
        }
  return out;
}

ComplexMatrix partial_transpose(const DensityOperator& rho, Mode mode) {
  return partial_transpose(rho.matrix, rho.dim_a, rho.dim_b, mode);
}

namespace {

nlohmann::json complex_pair(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex pair_complex(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

std::string to_json(const TwoModeState& s) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "two_mode_state";
  j["mode_dims"] = {s.dim_a, s.dim_b};
  j["leakage"] = s.leakage;
  nlohmann::json amps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) amps.push_back(complex_pair(s.amps(i)));
  j["amplitudes"] = std::move(amps);
  return j.dump(2);
}

std::string to_json(const DensityOperator& rho) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "density_operator";
  j["mode_dims"] = {rho.dim_a, rho.dim_b};
  j["leakage"] = rho.leakage;
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c) row.push_back(complex_pair(rho.matrix(r, c)));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump(2);
}

TwoModeState state_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("kind") != "two_mode_state") throw NumericsError("state_from_json: wrong kind");
  const int da = j.at("mode_dims").at(0).get<int>();
  const int db = j.at("mode_dims").at(1).get<int>();
  ComplexVector amps(static_cast<Eigen::Index>(da) * db);
  const auto& arr = j.at("amplitudes");
  if (static_cast<Eigen::Index>(arr.size()) != amps.size())
    throw NumericsError("state_from_json: amplitude count mismatch");
  for (Eigen::Index i = 0; i < amps.size(); ++i) amps(i) = pair_complex(arr.at(i));
  TwoModeState s = TwoModeState::from_amplitudes(std::move(amps), da, db, false);
  s.leakage = j.at("leakage").get<double>();
  return s;
}

DensityOperator density_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("kind") != "density_operator") throw NumericsError("density_from_json: wrong kind");
  const int da = j.at("mode_dims").at(0).get<int>();
  const int db = j.at("mode_dims").at(1).get<int>();
  const auto& rows = j.at("matrix");
  ComplexMatrix m(static_cast<Eigen::Index>(da) * db, static_cast<Eigen::Index>(da) * db);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = pair_complex(rows.at(r).at(c));
  DensityOperator rho = DensityOperator::from_matrix(std::move(m), da, db);
  rho.leakage = j.at("leakage").get<double>();
  return rho;
}

}  // namespace dse::fock
