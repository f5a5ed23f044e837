#include "dse/channels.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace dse::channels {

using fock::DensityOperator;
using fock::FockCutoff;
using fock::Mode;
using fock::TwoModeState;

double KrausChannel::completeness_defect() const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const auto& k : ops) sum += k.adjoint() * k;
  sum.diagonal().array() -= 1.0;
  return sum.cwiseAbs().maxCoeff();
}

KrausChannel loss_channel(double eta, FockCutoff dim) {
  if (eta < 0.0 || eta > 1.0) throw NumericsError("loss_channel: eta must lie in [0, 1]");
  const int d = dim.dim;
  KrausChannel ch;
  ch.eta = eta;
  ch.dim = d;

  if (eta == 1.0) {
    ch.ops.push_back(ComplexMatrix::Identity(d, d));
    return ch;
  }
  if (eta == 0.0) {
    for (int k = 0; k < d; ++k) {
      ComplexMatrix m = ComplexMatrix::Zero(d, d);
      m(0, k) = 1.0;
      ch.ops.push_back(std::move(m));
    }
    return ch;
  }
  const double log_eta = std::log(eta), log_loss = std::log1p(-eta);
  for (int k = 0; k < d; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int n = k; n < d; ++n) {
      const double log_binom = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      m(n - k, n) = std::exp(0.5 * (log_binom + (n - k) * log_eta + k * log_loss));
    }
    ch.ops.push_back(std::move(m));
  }
  return ch;
}

ComplexMatrix apply_channel_single_mode(const ComplexMatrix& rho, const KrausChannel& ch) {
  if (rho.rows() != ch.dim || rho.cols() != ch.dim)
    throw NumericsError("apply_channel_single_mode: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim, ch.dim);
  for (const auto& k : ch.ops) out += k * rho * k.adjoint();
  return out;
}

namespace {

ComplexMatrix swap_modes(const ComplexMatrix& rho, int da, int db) {
  ComplexMatrix out(rho.rows(), rho.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < da; ++c)
        for (int e = 0; e < db; ++e)
          out(static_cast<Eigen::Index>(b) * da + a, static_cast<Eigen::Index>(e) * da + c) =
              rho(static_cast<Eigen::Index>(a) * db + b, static_cast<Eigen::Index>(c) * db + e);
  return out;
}

// sum_k (I (x) K) rho (I (x) K)^dag exploiting that I (x) K is block diagonal
// in the n_A-major flattening.
ComplexMatrix apply_on_minor_mode(const ComplexMatrix& rho, const KrausChannel& ch, int da, int db) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ch.ops) {
    const ComplexMatrix kd = k.adjoint();
    for (int a = 0; a < da; ++a)
      for (int c = 0; c < da; ++c)
        out.block(static_cast<Eigen::Index>(a) * db, static_cast<Eigen::Index>(c) * db, db, db) +=
            k * rho.block(static_cast<Eigen::Index>(a) * db, static_cast<Eigen::Index>(c) * db, db, db) * kd;
  }
  return out;
}

}  // namespace

DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& ch, Mode mode) {
  const int target_dim = mode == Mode::A ? rho.dim_a : rho.dim_b;
  if (ch.dim != target_dim) {
    std::ostringstream os;
    os << "apply_channel: channel dim " << ch.dim << " does not match mode dim " << target_dim;
    throw NumericsError(os.str());
  }
  DensityOperator out;
  out.dim_a = rho.dim_a;
  out.dim_b = rho.dim_b;
  out.leakage = rho.leakage;
  if (mode == Mode::B) {
    out.matrix = apply_on_minor_mode(rho.matrix, ch, rho.dim_a, rho.dim_b);
  } else {
    const ComplexMatrix swapped = swap_modes(rho.matrix, rho.dim_a, rho.dim_b);
    out.matrix = swap_modes(apply_on_minor_mode(swapped, ch, rho.dim_b, rho.dim_a), rho.dim_b, rho.dim_a);
  }
  // symmetrize away roundoff
  out.matrix = (out.matrix + out.matrix.adjoint()) / 2.0;
  return out;
}

PhaseNoiseModel PhaseNoiseModel::delta() { return {Kind::Delta, 0.0, numerics::delta_rule()}; }

PhaseNoiseModel PhaseNoiseModel::gaussian(double variance, int n_nodes) {
  if (variance == 0.0) return delta();
  return {Kind::Gaussian, variance, numerics::gaussian_quadrature(variance, n_nodes)};
}

TwoModeState phase_shifted_output(Complex alpha, double phi, FockCutoff dim_a, FockCutoff dim_b) {
  const Complex rot = std::polar(1.0, phi);
  const ComplexVector disp_one_a = fock::displacement(alpha * rot, dim_a).matrix.col(1);
  const ComplexVector disp_one_b = fock::displacement(alpha, dim_b).matrix.col(1);
  const ComplexVector coh_a = fock::coherent_state(alpha * rot, dim_a);
  const ComplexVector coh_b = fock::coherent_state(alpha, dim_b);

  ComplexVector amps(static_cast<Eigen::Index>(dim_a.dim) * dim_b.dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < dim_a.dim; ++a)
    for (int b = 0; b < dim_b.dim; ++b)
      amps(static_cast<Eigen::Index>(a) * dim_b.dim + b) =
          inv_sqrt2 * (rot * disp_one_a(a) * coh_b(b) - coh_a(a) * disp_one_b(b));
  return TwoModeState::from_amplitudes(std::move(amps), dim_a.dim, dim_b.dim);
}

TwoModeState displaced_frame_component(Complex alpha, double phi, FockCutoff dim_a, FockCutoff dim_b) {
  const Complex rot = std::polar(1.0, phi);
  const Complex beta = alpha * (rot - 1.0);
  const ComplexVector disp_one = fock::displacement(beta, dim_a).matrix.col(1);
  const ComplexVector coh = fock::coherent_state(beta, dim_a);
  const Complex global = std::polar(1.0, std::norm(alpha) * std::sin(phi));

  ComplexVector amps = ComplexVector::Zero(static_cast<Eigen::Index>(dim_a.dim) * dim_b.dim);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < dim_a.dim; ++a) {
    amps(static_cast<Eigen::Index>(a) * dim_b.dim + 0) = global * inv_sqrt2 * rot * disp_one(a);
    amps(static_cast<Eigen::Index>(a) * dim_b.dim + 1) = -global * inv_sqrt2 * coh(a);
  }
  return TwoModeState::from_amplitudes(std::move(amps), dim_a.dim, dim_b.dim);
}

DensityOperator dephased_state(Complex alpha, const PhaseNoiseModel& noise, FockCutoff dim_a,
                               FockCutoff dim_b, const DephasingOptions& opt) {
  const auto& rule = noise.rule;
  if (rule.nodes.empty()) throw NumericsError("dephased_state: noise model has no quadrature rule");

  const Eigen::Index n = static_cast<Eigen::Index>(dim_a.dim) * dim_b.dim;
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  double kept_weight = 0.0;
  double dropped_mass = 0.0;
  double truncation_budget = 0.0;
  double worst_leak = 0.0;

  for (int i = 0; i < rule.size(); ++i) {
    const double w = rule.weights[i];
    if (w < opt.node_weight_floor) {
      dropped_mass += w;
      continue;
    }
    const TwoModeState comp = opt.frame == Frame::Lab
                                  ? phase_shifted_output(alpha, rule.nodes[i], dim_a, dim_b)
                                  : displaced_frame_component(alpha, rule.nodes[i], dim_a, dim_b);
    const double leak = comp.leakage > opt.leakage_floor ? comp.leakage : 0.0;
    truncation_budget += w * 2.0 * std::sqrt(leak);
    worst_leak = std::max(worst_leak, leak);
    acc.noalias() += w * (comp.amps * comp.amps.adjoint());
    kept_weight += w;
  }

  const double mixture_error = truncation_budget + dropped_mass;
  if (mixture_error > opt.mixture_leakage_budget) {
    std::ostringstream os;
    os << "dephased_state: mixture truncation error " << mixture_error << " exceeds budget "
       << opt.mixture_leakage_budget << " at dims (" << dim_a.dim << "," << dim_b.dim
       << "), worst node leakage " << worst_leak;
    throw CutoffError(os.str(), mixture_error);
  }

  acc /= kept_weight;
  acc = (acc + acc.adjoint()) / 2.0;
  DensityOperator rho = DensityOperator::from_matrix(std::move(acc), dim_a.dim, dim_b.dim);
  rho.leakage = mixture_error;
  return rho;
}

DensityOperator dephased_state_monte_carlo(Complex alpha, double variance, int n_samples,
                                           std::uint64_t seed, FockCutoff dim_a, FockCutoff dim_b,
                                           Frame frame) {
  if (variance < 0.0) throw NumericsError("dephased_state_monte_carlo: variance must be nonnegative");
  if (n_samples < 1) throw NumericsError("dephased_state_monte_carlo: need at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> phase(0.0, std::sqrt(variance));

  const Eigen::Index n = static_cast<Eigen::Index>(dim_a.dim) * dim_b.dim;
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n_samples; ++i) {
    const double phi = phase(rng);
    const TwoModeState comp = frame == Frame::Lab ? phase_shifted_output(alpha, phi, dim_a, dim_b)
                                                  : displaced_frame_component(alpha, phi, dim_a, dim_b);
    acc.noalias() += comp.amps * comp.amps.adjoint();
  }
  acc /= acc.trace().real();
  acc = (acc + acc.adjoint()) / 2.0;
  return DensityOperator::from_matrix(std::move(acc), dim_a.dim, dim_b.dim);
}

DensityOperator coupling_loss_state(Complex alpha, double eta_c, FockCutoff dim_a, FockCutoff dim_b) {
  if (dim_a.dim != dim_b.dim)
    throw NumericsError("coupling_loss_state: beam-splitter requires equal cutoffs");
  const int d = dim_a.dim;

  ComplexMatrix one = ComplexMatrix::Zero(d, d);
  one(1, 1) = 1.0;
  const ComplexMatrix lossy_photon = apply_channel_single_mode(one, loss_channel(eta_c, d));

  const ComplexVector coh = fock::coherent_state(std::sqrt(2.0) * alpha, d);
  const double coh_leak = std::abs(1.0 - coh.squaredNorm());
  if (coh_leak > 1e-8)
    throw CutoffError("coupling_loss_state: coherent input leakage " + std::to_string(coh_leak),
                      coh_leak);

  ComplexMatrix rho_in(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
  const ComplexMatrix coh_rho = coh * coh.adjoint();
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c)
      rho_in.block(static_cast<Eigen::Index>(a) * d, static_cast<Eigen::Index>(c) * d, d, d) =
          lossy_photon(a, c) * coh_rho;

  const ComplexMatrix u = fock::beam_splitter_50_50(dim_a, dim_b);
  ComplexMatrix out = u * rho_in * u.adjoint();
  const double tr = out.trace().real();
  out /= tr;
  out = (out + out.adjoint()) / 2.0;
  DensityOperator rho = DensityOperator::from_matrix(std::move(out), d, d);
  rho.leakage = coh_leak + std::abs(1.0 - tr);
  return rho;
}

}  // namespace dse::channels
