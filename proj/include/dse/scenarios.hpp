#pragma once

#include "dse/channels.hpp"
#include "dse/protocol.hpp"

#include <map>
#include <string>
#include <vector>

namespace dse::scenarios {

/// One scenario invocation's outputs. The schema document describes the
/// columns of CSV payloads; JSON payloads carry their schema inline.
struct ScenarioOutput {
  int exit_code = 0;        // 0 ok, 2 partial output after a numerical failure
  std::string payload;      // CSV or JSON text
  std::string schema;       // companion column schema (empty for JSON payloads)
  bool is_csv = false;
};

struct StateParams {
  double alpha = 0.0;
  int dim = 0;  // 0: adaptive
  bool as_density = false;
};
ScenarioOutput run_state(const StateParams& p);

struct Fig2Params {
  std::vector<double> alpha2_list{1.0, 10.0, 100.0};
  double variance_max = 0.1;  // rad^2
  int steps = 20;
  int cutoff_cap = 64;
  bool variance_in_rad = false;  // interpret the grid as std dev (rad) instead of rad^2
};
ScenarioOutput run_fig2(const Fig2Params& p);

struct LossSweepParams {
  double alpha = 0.8;
  double eta_min = 0.0;
  double eta_max = 1.0;
  int steps = 10;
  bool simulate = true;
};
ScenarioOutput run_loss_sweep(const LossSweepParams& p);
ScenarioOutput run_coupling_sweep(const LossSweepParams& p);

struct SensitivityParams {
  std::vector<double> alpha2_list{1.0, 4.0};
  double eta_min = 0.5;
  double eta_max = 1.0;
  int steps = 10;
  bool simulate = true;
};
ScenarioOutput run_sensitivity(const SensitivityParams& p);

struct NoonParams {
  std::vector<int> n_list{2, 100, 1000};
};
ScenarioOutput run_noon(const NoonParams& p);

struct ExperimentCliParams {
  double eta_c = 0.5;
  double eta_t = 0.6;
  double visibility = 0.99996;
  double alpha = 28.0;
};
ScenarioOutput run_experiment(const ExperimentCliParams& p);

struct MeasureParams {
  double alpha = 1.0;
  double eta_c = 1.0;
  double eta_t = 1.0;
  double variance = 0.0;  // rad^2, common local-oscillator phase noise
  int nodes = 41;
};
ScenarioOutput run_measure(const MeasureParams& p);

/// Scenario names with one-line descriptions, in listing order.
const std::vector<std::pair<std::string, std::string>>& scenario_listing();

/// Closest scenario name by edit distance, for unknown-command messages.
std::string nearest_scenario(const std::string& name);

/// Full-precision scientific formatting used by every CSV column.
std::string format_number(double x);

}  // namespace dse::scenarios
