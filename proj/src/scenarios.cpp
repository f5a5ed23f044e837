#include "dse/scenarios.hpp"

#include "dse/entanglement.hpp"
#include "dse/metrology.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dse::scenarios {

using nlohmann::json;

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

namespace {

std::string schema_for(const std::vector<std::string>& columns, const std::string& scenario) {
  json j;
  j["schema_version"] = 1;
  j["scenario"] = scenario;
  j["columns"] = columns;
  return j.dump(2);
}

std::string csv_header(const std::vector<std::string>& columns) {
  std::string line;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) line += ',';
    line += columns[i];
  }
  line += '\n';
  return line;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> xs;
  if (steps <= 0) steps = 1;
  for (int i = 0; i <= steps; ++i) xs.push_back(lo + (hi - lo) * i / steps);
  return xs;
}

}  // namespace

ScenarioOutput run_state(const StateParams& p) {
  const int dim = p.dim > 0 ? p.dim : fock::recommended_cutoff(p.alpha);
  const fock::TwoModeState s = fock::build_output_state(p.alpha, dim, dim);
  if (p.as_density)
    return {0, fock::to_json(fock::DensityOperator::from_state(s)) + "\n", "", false};
  return {0, fock::to_json(s) + "\n", "", false};
}

ScenarioOutput run_fig2(const Fig2Params& p) {
  std::vector<double> variances = linspace(0.0, p.variance_max, p.steps);
  if (p.variance_in_rad)
    for (double& v : variances) v = v * v;

  protocol::Fig2Options opt;
  opt.cutoff_cap = p.cutoff_cap;
  const auto rows = protocol::fig2_sweep(p.alpha2_list, variances, opt);

  const std::vector<std::string> columns = {"alpha2", "variance", "negativity_numeric",
                                            "bound_oracle", "bound_gaussian"};
  std::string csv = csv_header(columns);
  bool any_flagged = false;
  for (const auto& r : rows) {
    csv += format_number(r.alpha2) + ',' + format_number(r.variance) + ',' +
           format_number(r.negativity_numeric) + ',' + format_number(r.bound_oracle) + ',' +
           format_number(r.bound_gaussian) + '\n';
    any_flagged |= r.flagged;
  }
  return {any_flagged ? 2 : 0, std::move(csv), schema_for(columns, "fig2"), true};
}

ScenarioOutput run_loss_sweep(const LossSweepParams& p) {
  const std::vector<std::string> columns = {"eta_t", "negativity_formula", "negativity_simulated",
                                            "negativity_coherent_benchmark"};
  std::string csv = csv_header(columns);
  int exit_code = 0;
  const int d = fock::recommended_cutoff(p.alpha);
  fock::DensityOperator rho_pure;
  if (p.simulate) rho_pure = fock::DensityOperator::from_state(fock::build_output_state(p.alpha, d, d));
  for (const double eta : linspace(p.eta_min, p.eta_max, p.steps)) {
    double simulated = std::numeric_limits<double>::quiet_NaN();
    if (p.simulate) {
      try {
        const auto lossy = channels::apply_channel(rho_pure, channels::loss_channel(eta, d), fock::Mode::B);
        simulated = entanglement::negativity(lossy);
      } catch (const CutoffError&) {
        exit_code = 2;
      }
    }
    csv += format_number(eta) + ',' + format_number(protocol::negativity_after_transmission_loss(eta)) +
           ',' + format_number(simulated) + ',' +
           format_number(protocol::coherent_entanglement_negativity(p.alpha * p.alpha, eta)) + '\n';
  }
  return {exit_code, std::move(csv), schema_for(columns, "loss-sweep"), true};
}

ScenarioOutput run_coupling_sweep(const LossSweepParams& p) {
  const std::vector<std::string> columns = {"eta_c", "negativity_formula", "negativity_simulated",
                                            "negativity_quadratic_approx"};
  std::string csv = csv_header(columns);
  int exit_code = 0;
  const int d = fock::recommended_cutoff(std::sqrt(2.0) * p.alpha);
  for (const double eta : linspace(p.eta_min, p.eta_max, p.steps)) {
    double simulated = std::numeric_limits<double>::quiet_NaN();
    if (p.simulate) {
      try {
        simulated = entanglement::negativity(channels::coupling_loss_state(p.alpha, eta, d, d));
      } catch (const CutoffError&) {
        exit_code = 2;
      }
    }
    csv += format_number(eta) + ',' + format_number(protocol::negativity_after_coupling_loss(eta)) + ',' +
           format_number(simulated) + ',' + format_number(eta * eta / 4.0) + '\n';
  }
  return {exit_code, std::move(csv), schema_for(columns, "coupling-sweep"), true};
}

ScenarioOutput run_sensitivity(const SensitivityParams& p) {
  const std::vector<std::string> columns = {"alpha2", "eta",      "s_slope", "s_classical",
                                            "s_simulated", "mean_n", "var_n"};
  std::string csv = csv_header(columns);
  int exit_code = 0;
  for (const double alpha2 : p.alpha2_list) {
    const double alpha = std::sqrt(alpha2);
    const int d = fock::recommended_cutoff(alpha);
    fock::DensityOperator rho_pure;
    if (p.simulate && alpha2 <= 16.0)
      rho_pure = fock::DensityOperator::from_state(fock::build_output_state(alpha, d, d));
    for (const double eta : linspace(p.eta_min, p.eta_max, p.steps)) {
      double sim = std::numeric_limits<double>::quiet_NaN();
      double mean = std::numeric_limits<double>::quiet_NaN();
      double var = std::numeric_limits<double>::quiet_NaN();
      if (p.simulate && alpha2 <= 16.0) {
        try {
          const auto ch = channels::loss_channel(eta, d);
          auto lossy = channels::apply_channel(rho_pure, ch, fock::Mode::A);
          lossy = channels::apply_channel(lossy, ch, fock::Mode::B);
          const auto report = metrology::sensitivity(lossy, fock::Mode::A);
          sim = report.s;
          mean = report.mean_n;
          var = report.var_n;
        } catch (const CutoffError&) {
          exit_code = 2;
        }
      }
      csv += format_number(alpha2) + ',' + format_number(eta) + ',' +
             format_number(metrology::lossy_dse_sensitivity(alpha2, eta)) + ',' +
             format_number(2.0 * eta * alpha2) + ',' + format_number(sim) + ',' +
             format_number(mean) + ',' + format_number(var) + '\n';
    }
  }
  return {exit_code, std::move(csv), schema_for(columns, "sensitivity"), true};
}

ScenarioOutput run_noon(const NoonParams& p) {
  const std::vector<std::string> columns = {"n", "eta_threshold", "loss_threshold"};
  std::string csv = csv_header(columns);
  for (const int n : p.n_list) {
    const double eta = metrology::noon_loss_threshold(n);
    csv += std::to_string(n) + ',' + format_number(eta) + ',' + format_number(1.0 - eta) + '\n';
  }
  return {0, std::move(csv), schema_for(columns, "noon"), true};
}

ScenarioOutput run_experiment(const ExperimentCliParams& p) {
  protocol::ExperimentParams params;
  params.eta_c = p.eta_c;
  params.eta_t = p.eta_t;
  params.epsilon = 1.0 - p.visibility;
  params.alpha2 = p.alpha * p.alpha;
  params.check();

  json j;
  j["schema_version"] = 1;
  j["scenario"] = "experiment";
  j["params"] = {{"eta_c", params.eta_c},
                 {"eta_t", params.eta_t},
                 {"visibility", p.visibility},
                 {"epsilon", params.epsilon},
                 {"alpha", p.alpha},
                 {"alpha2", params.alpha2},
                 {"eta", params.eta()}};
  j["concurrence_bound"] = protocol::experiment_concurrence_bound(params);
  j["photons_mean"] = 2.0 * params.alpha2 + 1.0;
  j["lo_noise_concurrence_bound"] = protocol::lo_noise_concurrence_bound(params.alpha2, p.visibility);
  try {
    const auto threshold = protocol::max_alpha_for_positive_bound(params);
    j["max_alpha_threshold"] = {{"value", threshold.value}, {"unbounded", threshold.unbounded}};
  } catch (const NumericsError& e) {
    j["max_alpha_threshold"] = {{"error", e.what()}};
  }
  return {0, j.dump(2) + "\n", "", false};
}

ScenarioOutput run_measure(const MeasureParams& p) {
  protocol::MeasurementSettings settings;
  settings.alpha = p.alpha;
  settings.eta_c = p.eta_c;
  settings.eta_t = p.eta_t;
  settings.noise = p.variance > 0.0 ? channels::PhaseNoiseModel::gaussian(p.variance, p.nodes)
                                    : channels::PhaseNoiseModel::delta();
  const auto result = protocol::measurement_pipeline(settings);

  json j;
  j["schema_version"] = 1;
  j["scenario"] = "measure";
  j["params"] = {{"alpha", p.alpha},
                 {"eta_c", p.eta_c},
                 {"eta_t", p.eta_t},
                 {"variance", p.variance},
                 {"nodes", p.nodes}};
  j["tomogram"] = {{"p00", result.tomogram.p00},
                   {"p01", result.tomogram.p01},
                   {"p10", result.tomogram.p10},
                   {"p11", result.tomogram.p11},
                   {"visibility", result.tomogram.visibility},
                   {"captured_mass", result.tomogram.captured_mass}};
  j["chou_concurrence_bound"] = result.chou_bound;
  j["wootters_concurrence"] = result.wootters;
  j["negativity"] = result.negativity;
  return {0, j.dump(2) + "\n", "", false};
}

const std::vector<std::pair<std::string, std::string>>& scenario_listing() {
  static const std::vector<std::pair<std::string, std::string>> listing = {
      {"state", "serialize the displaced single-photon entangled state for a given alpha"},
      {"fig2", "negativity of the dephased state vs phase-noise variance, with both bounds"},
      {"loss-sweep", "negativity under mode-B transmission loss: simulation, eta_t/2, coherent benchmark"},
      {"coupling-sweep", "negativity under single-photon coupling loss: simulation vs closed form"},
      {"sensitivity", "phase-measurement sensitivity slopes and full-simulation values"},
      {"noon", "loss thresholds below which N00N states drop under the coherent baseline"},
      {"experiment", "closed-form concurrence bound for the proposed experiment parameters"},
      {"measure", "displaced-back detection pipeline: tomogram, visibility, Chou bound, negativity"},
  };
  return listing;
}

std::string nearest_scenario(const std::string& name) {
  auto distance = [](const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
      cur[0] = i;
      for (size_t j = 1; j <= b.size(); ++j)
        cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
      std::swap(prev, cur);
    }
    return prev[b.size()];
  };
  std::string best;
  double best_score = std::numeric_limits<double>::max();
  for (const auto& [name_i, _] : scenario_listing()) {
    size_t prefix = 0;
    while (prefix < name.size() && prefix < name_i.size() && name[prefix] == name_i[prefix]) ++prefix;
    const double score = static_cast<double>(distance(name, name_i)) - 2.0 * prefix;
    if (score < best_score) {
      best_score = score;
      best = name_i;
    }
  }
  return best;
}

}  // namespace dse::scenarios
