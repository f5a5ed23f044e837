#include "dse/scenarios.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using dse::scenarios::ScenarioOutput;

std::string resolve_output_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv("DSE_OUTPUT_DIR"); dir && *dir)
    return (fs::path(dir) / path).string();
  return path;
}

int emit(const ScenarioOutput& out, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << out.payload;
  } else {
    const std::string resolved = resolve_output_path(output_path);
    std::ofstream f(resolved, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file '" << resolved << "'\n";
      return 1;
    }
    f << out.payload;
    if (!out.schema.empty()) {
      std::ofstream s(resolved + ".schema.json", std::ios::binary);
      s << out.schema << "\n";
    }
  }
  if (out.exit_code != 0)
    std::cerr << "warning: some grid points hit a cutoff failure; output is partial\n";
  return out.exit_code;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  if (values.empty()) throw CLI::ValidationError("expected a comma-separated list of numbers");
  return values;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (double v : parse_double_list(text)) values.push_back(static_cast<int>(v));
  return values;
}

void print_listing() {
  std::cout << "dse - displaced single-photon entanglement simulator\n\n";
  std::cout << "usage: dse <scenario> [options]   (dse <scenario> --help for parameters)\n\n";
  std::cout << "scenarios:\n";
  for (const auto& [name, desc] : dse::scenarios::scenario_listing())
    std::cout << "  " << name << std::string(16 - name.size(), ' ') << desc << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"displaced single-photon entanglement simulator"};
  app.require_subcommand(0, 1);

  std::string output_path;

  // --- state ---
  dse::scenarios::StateParams state_params;
  auto* state = app.add_subcommand("state", dse::scenarios::scenario_listing()[0].second);
  state->add_option("--alpha", state_params.alpha, "displacement amplitude alpha (dimensionless)");
  state->add_option("--dim", state_params.dim, "per-mode Fock cutoff (default: adaptive)");
  state->add_flag("--density", state_params.as_density, "emit the density operator instead of amplitudes");
  state->add_option("-o,--output", output_path, "output file (JSON)");

  // --- fig2 ---
  std::string fig2_alpha2 = "1,10,100";
  std::string variance_unit = "rad2";
  dse::scenarios::Fig2Params fig2_params;
  auto* fig2 = app.add_subcommand("fig2", dse::scenarios::scenario_listing()[1].second);
  fig2->add_option("--alpha2", fig2_alpha2, "comma list of |alpha|^2 values (photons)");
  fig2->add_option("--variance-max", fig2_params.variance_max,
                   "largest phase-noise variance on the grid (rad^2 unless --variance-unit rad)");
  fig2->add_option("--steps", fig2_params.steps, "grid steps from 0 to the maximum");
  fig2->add_option("--cutoff-cap", fig2_params.cutoff_cap,
                   "per-mode cutoff cap for displaced-frame points");
  fig2->add_option("--variance-unit", variance_unit,
                   "rad2: grid values are variances; rad: grid values are standard deviations")
      ->check(CLI::IsMember({"rad2", "rad"}));
  fig2->add_option("-o,--output", output_path, "output file (CSV)");

  // --- loss-sweep / coupling-sweep ---
  dse::scenarios::LossSweepParams loss_params;
  auto* loss = app.add_subcommand("loss-sweep", dse::scenarios::scenario_listing()[2].second);
  loss->add_option("--alpha", loss_params.alpha, "displacement amplitude alpha (dimensionless)");
  loss->add_option("--eta-min", loss_params.eta_min, "smallest transmission eta_t");
  loss->add_option("--eta-max", loss_params.eta_max, "largest transmission eta_t");
  loss->add_option("--steps", loss_params.steps, "grid steps");
  loss->add_flag("--simulate,!--no-simulate", loss_params.simulate,
                 "skip the full-simulation column");
  loss->add_option("-o,--output", output_path, "output file (CSV)");

  dse::scenarios::LossSweepParams coupling_params;
  coupling_params.alpha = 0.5;
  auto* coupling = app.add_subcommand("coupling-sweep", dse::scenarios::scenario_listing()[3].second);
  coupling->add_option("--alpha", coupling_params.alpha, "displacement amplitude alpha (dimensionless)");
  coupling->add_option("--eta-min", coupling_params.eta_min, "smallest coupling efficiency eta_c");
  coupling->add_option("--eta-max", coupling_params.eta_max, "largest coupling efficiency eta_c");
  coupling->add_option("--steps", coupling_params.steps, "grid steps");
  coupling->add_flag("--simulate,!--no-simulate", coupling_params.simulate,
                     "skip the full-simulation column");
  coupling->add_option("-o,--output", output_path, "output file (CSV)");

  // --- sensitivity ---
  std::string sens_alpha2 = "1,4";
  dse::scenarios::SensitivityParams sens_params;
  auto* sens = app.add_subcommand("sensitivity", dse::scenarios::scenario_listing()[4].second);
  sens->add_option("--alpha2", sens_alpha2, "comma list of |alpha|^2 values (photons)");
  sens->add_option("--eta-min", sens_params.eta_min, "smallest transmission eta");
  sens->add_option("--eta-max", sens_params.eta_max, "largest transmission eta");
  sens->add_option("--steps", sens_params.steps, "grid steps");
  sens->add_flag("--simulate,!--no-simulate", sens_params.simulate,
                 "skip the full-simulation columns");
  sens->add_option("-o,--output", output_path, "output file (CSV)");

  // --- noon ---
  std::string noon_n = "2,100,1000";
  auto* noon = app.add_subcommand("noon", dse::scenarios::scenario_listing()[5].second);
  noon->add_option("--n", noon_n, "comma list of N00N photon numbers");
  noon->add_option("-o,--output", output_path, "output file (CSV)");

  // --- experiment ---
  dse::scenarios::ExperimentCliParams exp_params;
  auto* exp = app.add_subcommand("experiment", dse::scenarios::scenario_listing()[6].second);
  exp->add_option("--eta-c", exp_params.eta_c, "coupling efficiency of the single photon");
  exp->add_option("--eta-t", exp_params.eta_t, "global detection efficiency");
  exp->add_option("--visibility", exp_params.visibility, "interferometric visibility V (epsilon = 1-V)");
  exp->add_option("--alpha", exp_params.alpha, "displacement amplitude |alpha| (dimensionless)");
  exp->add_option("-o,--output", output_path, "output file (JSON)");

  // --- measure ---
  dse::scenarios::MeasureParams measure_params;
  auto* measure = app.add_subcommand("measure", dse::scenarios::scenario_listing()[7].second);
  measure->add_option("--alpha", measure_params.alpha, "displacement amplitude alpha (dimensionless)");
  measure->add_option("--eta-c", measure_params.eta_c, "coupling efficiency before the beam-splitter");
  measure->add_option("--eta-t", measure_params.eta_t, "transmission of mode B to the detector");
  measure->add_option("--variance", measure_params.variance,
                      "common local-oscillator phase-noise variance (rad^2)");
  measure->add_option("--nodes", measure_params.nodes, "quadrature nodes for the noise average");
  measure->add_option("-o,--output", output_path, "output file (JSON)");

  if (argc <= 1) {
    print_listing();
    return 0;
  }
  // Unknown scenario: report the nearest match before CLI11's generic error.
  if (argv[1][0] != '-') {
    const std::string name = argv[1];
    bool known = false;
    for (const auto& [n, _] : dse::scenarios::scenario_listing()) known |= (n == name);
    if (!known) {
      std::cerr << "error: unknown scenario '" << name << "' (did you mean '"
                << dse::scenarios::nearest_scenario(name) << "'?)\n";
      return 1;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*state) return emit(dse::scenarios::run_state(state_params), output_path);
    if (*fig2) {
      fig2_params.alpha2_list = parse_double_list(fig2_alpha2);
      fig2_params.variance_in_rad = variance_unit == "rad";
      return emit(dse::scenarios::run_fig2(fig2_params), output_path);
    }
    if (*loss) return emit(dse::scenarios::run_loss_sweep(loss_params), output_path);
    if (*coupling) return emit(dse::scenarios::run_coupling_sweep(coupling_params), output_path);
    if (*sens) {
      sens_params.alpha2_list = parse_double_list(sens_alpha2);
      return emit(dse::scenarios::run_sensitivity(sens_params), output_path);
    }
    if (*noon) {
      dse::scenarios::NoonParams p;
      p.n_list = parse_int_list(noon_n);
      return emit(dse::scenarios::run_noon(p), output_path);
    }
    if (*exp) return emit(dse::scenarios::run_experiment(exp_params), output_path);
    if (*measure) return emit(dse::scenarios::run_measure(measure_params), output_path);
  } catch (const dse::CutoffError& e) {
    std::cerr << "cutoff failure: " << e.what() << "\n";
    return 2;
  } catch (const dse::NumericsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  print_listing();
  return 0;
}
