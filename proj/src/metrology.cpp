#include "dse/metrology.hpp"

#include <cmath>

namespace dse::metrology {

using fock::DensityOperator;
using fock::Mode;

SensitivityReport sensitivity(const DensityOperator& rho, Mode mode) {
  const int da = rho.dim_a, db = rho.dim_b;

  // The sensitivity of the truncated matrix only stands in for the physical
  // one when the state fits its box.
  if (!(rho.leakage <= 1e-7))
    throw CutoffError("sensitivity: state carries truncation leakage " + std::to_string(rho.leakage),
                      rho.leakage);

  // s = -tr [n, rho]^2 = sum_{jk} (j - k)^2 |rho_{(j b),(k b')}|^2 with j, k
  // the probed mode's indices; manifestly independent of a phase rotation.
  double s = 0.0;
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < da; ++c)
        for (int e = 0; e < db; ++e) {
          const int j = mode == Mode::A ? a : b;
          const int k = mode == Mode::A ? c : e;
          if (j == k) continue;
          const double diff = static_cast<double>(j - k);
          s += diff * diff *
               std::norm(rho.matrix(static_cast<Eigen::Index>(a) * db + b,
                                    static_cast<Eigen::Index>(c) * db + e));
        }

  const fock::PhotonStats stats = fock::mode_photon_statistics(rho, mode);
  return {s, stats.mean, stats.variance, 2.0 * stats.mean};
}

double lossy_dse_sensitivity(double alpha2, double eta) {
  if (alpha2 < 0.0) throw NumericsError("lossy_dse_sensitivity: alpha2 must be nonnegative");
  if (eta < 0.0 || eta > 1.0) throw NumericsError("lossy_dse_sensitivity: eta must lie in [0, 1]");
  return 2.0 * eta * alpha2 * (1.0 - 3.0 * eta + 4.0 * eta * eta);
}

double noon_loss_threshold(int n_photons) {
  if (n_photons < 1) throw NumericsError("noon_loss_threshold: N must be at least 1");
  const double n = static_cast<double>(n_photons);
  return std::pow(2.0 / n, 1.0 / (2.0 * n - 1.0));
}

double cloner_separability_threshold(double n_macro) {
  if (n_macro < 0.0) throw NumericsError("cloner_separability_threshold: n must be nonnegative");
  return n_macro / (n_macro + 1.0);
}

}  // namespace dse::metrology
