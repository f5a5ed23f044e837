#include "dse/protocol.hpp"

#include <cmath>
#include <sstream>

namespace dse::protocol {

using channels::DephasingOptions;
using channels::Frame;
using channels::PhaseNoiseModel;
using fock::DensityOperator;
using fock::Mode;
using fock::TwoModeState;

void ExperimentParams::check() const {
  const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(eta_c)) throw NumericsError("ExperimentParams: eta_c outside [0, 1]");
  if (!in_unit(eta_t)) throw NumericsError("ExperimentParams: eta_t outside [0, 1]");
  if (!in_unit(epsilon)) throw NumericsError("ExperimentParams: epsilon outside [0, 1]");
  if (alpha2 < 0.0) throw NumericsError("ExperimentParams: alpha2 must be nonnegative");
}

double negativity_after_transmission_loss(double eta_t) {
  if (eta_t < 0.0 || eta_t > 1.0) throw NumericsError("negativity_after_transmission_loss: eta_t outside [0, 1]");
  return eta_t / 2.0;
}

double negativity_after_coupling_loss(double eta_c) {
  if (eta_c < 0.0 || eta_c > 1.0) throw NumericsError("negativity_after_coupling_loss: eta_c outside [0, 1]");
  return -0.5 * (1.0 - eta_c - std::sqrt(1.0 - 2.0 * (1.0 - eta_c) * eta_c));
}

double coherent_entanglement_negativity(double alpha2, double eta_t) {
  if (alpha2 < 0.0) throw NumericsError("coherent_entanglement_negativity: alpha2 must be nonnegative");
  if (eta_t < 0.0 || eta_t > 1.0) throw NumericsError("coherent_entanglement_negativity: eta_t outside [0, 1]");
  return 0.5 * std::exp(-2.0 * (1.0 - eta_t) * alpha2);
}

double witness_integrand(double alpha2, double phi) {
  return std::exp(-2.0 * alpha2 * (1.0 - std::cos(phi))) / 2.0 *
         (std::cos(phi) - alpha2 * (1.0 - std::cos(2.0 * phi)));
}

double gaussian_phase_bound_approx(double alpha2, double variance) {
  if (variance < 0.0) throw NumericsError("gaussian_phase_bound_approx: variance must be nonnegative");
  return (2.0 - variance) / (4.0 * std::pow(1.0 + 2.0 * alpha2 * variance, 1.5));
}

namespace {

double printed_integrand(double alpha2, double phi) {
  return std::exp(-2.0 * alpha2 * (2.0 - std::cos(phi))) / 2.0 *
         (alpha2 * (1.0 - std::cos(2.0 * phi)) - std::cos(phi));
}

double quadrature_of(const numerics::QuadratureRule& rule, double alpha2,
                     double (*f)(double, double)) {
  double sum = 0.0;
  for (int i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(alpha2, rule.nodes[i]);
  return sum;
}

/// Double the node count until the closed-form bound integral stabilizes.
PhaseNoiseModel adapt_nodes(double alpha2, double variance, const Fig2Options& opt) {
  if (variance == 0.0) return PhaseNoiseModel::delta();
  int n = opt.initial_nodes;
  PhaseNoiseModel model = PhaseNoiseModel::gaussian(variance, n);
  double value = quadrature_of(model.rule, alpha2, &witness_integrand);
  for (int i = 0; i < opt.max_node_doublings; ++i) {
    const int n2 = 2 * n - 1;
    PhaseNoiseModel refined = PhaseNoiseModel::gaussian(variance, n2);
    const double value2 = quadrature_of(refined.rule, alpha2, &witness_integrand);
    if (std::abs(value2 - value) < 1e-9) break;
    n = n2;
    model = std::move(refined);
    value = value2;
  }
  return model;
}

struct DephasedPoint {
  DensityOperator rho;
  Frame frame;
  TwoModeState witness;
};

DephasedPoint build_dephased_point(double alpha2, const PhaseNoiseModel& noise, const Fig2Options& opt) {
  const double alpha = std::sqrt(alpha2);
  DephasingOptions dopt;
  int da, db;
  if (alpha2 <= opt.displaced_frame_threshold) {
    dopt.frame = Frame::Lab;
    da = db = fock::recommended_cutoff(alpha);
  } else {
    dopt.frame = Frame::Displaced;
    double phi_max = 0.0;
    for (int i = 0; i < noise.rule.size(); ++i)
      if (noise.rule.weights[i] >= dopt.node_weight_floor)
        phi_max = std::max(phi_max, std::abs(noise.rule.nodes[i]));
    const double beta_max = 2.0 * alpha * std::abs(std::sin(std::min(phi_max, M_PI) / 2.0));
    da = std::min(opt.cutoff_cap, fock::recommended_cutoff(beta_max));
    da = std::max(da, 4);
    db = 4;
  }
  DensityOperator rho = channels::dephased_state(alpha, noise, da, db, dopt);
  TwoModeState witness = dopt.frame == Frame::Lab
                             ? entanglement::saturating_witness_vector(alpha, da, db)
                             : entanglement::saturating_witness_vector(0.0, da, db);
  return {std::move(rho), dopt.frame, std::move(witness)};
}

}  // namespace

PhaseBound semi_analytic_phase_bound(double alpha2, const PhaseNoiseModel& noise) {
  if (alpha2 < 0.0) throw NumericsError("semi_analytic_phase_bound: alpha2 must be nonnegative");
  PhaseBound out;
  out.printed_integrand_value = quadrature_of(noise.rule, alpha2, &printed_integrand);
  const DephasedPoint point = build_dephased_point(alpha2, noise, Fig2Options{});
  out.witness_oracle = -entanglement::witness_overlap(point.rho, point.witness);
  return out;
}

std::vector<Fig2Row> fig2_sweep(const std::vector<double>& alpha2_list,
                                const std::vector<double>& variance_grid, const Fig2Options& opt) {
  if (alpha2_list.empty() || variance_grid.empty())
    throw NumericsError("fig2_sweep: grids must be nonempty");
  std::vector<Fig2Row> rows;
  rows.reserve(alpha2_list.size() * variance_grid.size());
  for (const double alpha2 : alpha2_list) {
    for (const double variance : variance_grid) {
      Fig2Row row;
      row.alpha2 = alpha2;
      row.variance = variance;
      row.bound_gaussian = gaussian_phase_bound_approx(alpha2, variance);
      try {
        const PhaseNoiseModel noise = adapt_nodes(alpha2, variance, opt);
        const DephasedPoint point = build_dephased_point(alpha2, noise, opt);
        row.negativity_numeric = entanglement::negativity(point.rho);
        row.bound_oracle = -entanglement::witness_overlap(point.rho, point.witness);
      } catch (const CutoffError&) {
        row.flagged = true;
        row.negativity_numeric = std::numeric_limits<double>::quiet_NaN();
        row.bound_oracle = std::numeric_limits<double>::quiet_NaN();
      }
      rows.push_back(row);
    }
  }
  return rows;
}

double lo_noise_concurrence_bound(double alpha2, double v_bar) {
  if (v_bar < 0.0 || v_bar > 1.0) throw NumericsError("lo_noise_concurrence_bound: visibility outside [0, 1]");
  if (alpha2 < 0.0) throw NumericsError("lo_noise_concurrence_bound: alpha2 must be nonnegative");
  return std::max(0.0, 1.0 - 10.0 * (1.0 - v_bar) * alpha2);
}

double experiment_concurrence_bound(const ExperimentParams& p) {
  p.check();
  const double eta = p.eta();
  const double noise_photons = p.epsilon * p.eta_t * p.alpha2;
  const double value = eta - 2.0 * std::sqrt(2.0 * eta * (1.0 - eta)) * std::sqrt(noise_photons) -
                       2.0 * (2.0 + 3.0 * eta) * noise_photons;
  return std::max(0.0, value);
}

AlphaThreshold max_alpha_for_positive_bound(const ExperimentParams& p) {
  ExperimentParams q = p;
  q.alpha2 = 0.0;
  q.check();
  if (experiment_concurrence_bound(q) <= 0.0)
    throw NumericsError("max_alpha_for_positive_bound: bound nonpositive already at alpha = 0");

  constexpr double kAlphaCap = 200.0;
  auto bound_at = [&q](double alpha) {
    q.alpha2 = alpha * alpha;
    return experiment_concurrence_bound(q);
  };
  if (q.epsilon == 0.0 || bound_at(kAlphaCap) > 0.0) return {kAlphaCap, true};

  double lo = 0.0, hi = kAlphaCap;
  while (hi - lo > 1e-6 * std::max(1.0, hi)) {
    const double mid = (lo + hi) / 2.0;
    (bound_at(mid) > 0.0 ? lo : hi) = mid;
  }
  return {(lo + hi) / 2.0, false};
}

MeasurementResult measurement_pipeline(const MeasurementSettings& s) {
  const double alpha2 = s.alpha * s.alpha;
  if (alpha2 > s.max_alpha2) {
    std::ostringstream os;
    os << "measurement_pipeline: alpha^2 = " << alpha2 << " exceeds the full-simulation cap "
       << s.max_alpha2;
    throw NumericsError(os.str());
  }
  const int d = s.cutoff_override.value_or(fock::recommended_cutoff(s.alpha));

  DensityOperator rho = channels::coupling_loss_state(s.alpha, s.eta_c, d, d);
  rho = channels::apply_channel(rho, channels::loss_channel(s.eta_t, d), Mode::B);

  // Noisy common displaced-back averaging,
  //   sigma = sum_j w_j (D_A (x) D_B)(-alpha e^{i phi_j}) rho (.)^dag,
  // applied to the eigenvectors of rho so each node costs two thin products.
  const auto es = numerics::hermitian_eigen(rho.matrix);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues.size(); ++i)
    if (es.eigenvalues(i) > 1e-13) keep.push_back(i);
  ComplexMatrix scaled(rho.matrix.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c)
    scaled.col(static_cast<Eigen::Index>(c)) =
        std::sqrt(es.eigenvalues(keep[c])) * es.eigenvectors.col(keep[c]);

  ComplexMatrix acc = ComplexMatrix::Zero(rho.matrix.rows(), rho.matrix.cols());
  double kept_weight = 0.0;
  for (int j = 0; j < s.noise.rule.size(); ++j) {
    const double w = s.noise.rule.weights[j];
    if (w < 1e-14) continue;
    const Complex shifted = -s.alpha * std::polar(1.0, s.noise.rule.nodes[j]);
    const ComplexMatrix wj = fock::tensor_product(fock::displacement(shifted, d).matrix,
                                                  fock::displacement(shifted, d).matrix);
    const ComplexMatrix moved = wj * scaled;
    acc.noalias() += w * (moved * moved.adjoint());
    kept_weight += w;
  }
  acc /= acc.trace().real();
  acc = (acc + acc.adjoint()) / 2.0;
  (void)kept_weight;
  DensityOperator sigma = DensityOperator::from_matrix(std::move(acc), d, d);
  sigma.leakage = rho.leakage;

  MeasurementResult out;
  out.tomogram = entanglement::project_qubit_subspace(sigma);
  out.chou_bound = entanglement::chou_concurrence_bound(out.tomogram);
  out.wootters = entanglement::wootters_concurrence(out.tomogram.projected);
  out.negativity = entanglement::negativity(sigma);
  return out;
}

}  // namespace dse::protocol
