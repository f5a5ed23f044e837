#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dse/scenarios.hpp"

#include "json.hpp"

#include <cmath>
#include <sstream>

using namespace dse;
using namespace dse::scenarios;
using nlohmann::json;

TEST_CASE("state scenario serializes the displaced single-photon entanglement") {
  StateParams p;
  p.alpha = 0.0;
  p.dim = 8;
  const auto out = run_state(p);
  CHECK(out.exit_code == 0);
  const json j = json::parse(out.payload);
  CHECK(j["kind"] == "two_mode_state");
  CHECK(j["mode_dims"][0] == 8);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(j["amplitudes"][8][0].get<double>() == doctest::Approx(inv_sqrt2).epsilon(1e-12));   // |1,0>
  CHECK(j["amplitudes"][1][0].get<double>() == doctest::Approx(-inv_sqrt2).epsilon(1e-12));  // |0,1>
}

TEST_CASE("fig2 scenario: pinned header, determinism, schema document") {
  Fig2Params p;
  p.alpha2_list = {1.0};
  p.variance_max = 0.02;
  p.steps = 2;
  const auto out = run_fig2(p);
  CHECK(out.exit_code == 0);
  CHECK(out.is_csv);
  std::istringstream lines(out.payload);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "alpha2,variance,negativity_numeric,bound_oracle,bound_gaussian");
  int data_lines = 0;
  for (std::string line; std::getline(lines, line);) ++data_lines;
  CHECK(data_lines == 3);

  const auto rerun = run_fig2(p);
  CHECK(rerun.payload == out.payload);  // byte-identical reruns

  const json schema = json::parse(out.schema);
  CHECK(schema["schema_version"] == 1);
  CHECK(schema["columns"].size() == 5);
  CHECK(schema["columns"][2] == "negativity_numeric");
}

TEST_CASE("fig2 scenario flags starved points with a partial-output status") {
  Fig2Params p;
  p.alpha2_list = {100.0};
  p.variance_max = 0.05;
  p.steps = 1;
  p.cutoff_cap = 8;
  const auto out = run_fig2(p);
  CHECK(out.exit_code == 2);
  CHECK(out.payload.find("nan") != std::string::npos);
}

TEST_CASE("variance unit rad squares the grid values") {
  Fig2Params rad2;
  rad2.alpha2_list = {1.0};
  rad2.variance_max = 0.25;  // exactly representable together with its root
  rad2.steps = 1;
  Fig2Params rad = rad2;
  rad.variance_max = 0.5;  // 0.5 rad std dev -> 0.25 rad^2 variance
  rad.variance_in_rad = true;
  const auto a = run_fig2(rad2);
  const auto b = run_fig2(rad);
  CHECK(a.payload == b.payload);
}

TEST_CASE("loss sweep columns carry the closed form and the simulation") {
  LossSweepParams p;
  p.alpha = 0.8;
  p.steps = 4;
  const auto out = run_loss_sweep(p);
  CHECK(out.exit_code == 0);
  std::istringstream lines(out.payload);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "eta_t,negativity_formula,negativity_simulated,negativity_coherent_benchmark");
  for (std::string line; std::getline(lines, line);) {
    std::istringstream fields(line);
    std::string eta_s, formula_s, sim_s;
    std::getline(fields, eta_s, ',');
    std::getline(fields, formula_s, ',');
    std::getline(fields, sim_s, ',');
    CHECK(std::stod(formula_s) == doctest::Approx(std::stod(eta_s) / 2.0).epsilon(1e-12));
    CHECK(std::stod(sim_s) == doctest::Approx(std::stod(formula_s)).epsilon(1e-5));
  }
}

TEST_CASE("noon scenario values") {
  NoonParams p;
  const auto out = run_noon(p);
  std::istringstream lines(out.payload);
  std::string header, row2, row100;
  std::getline(lines, header);
  CHECK(header == "n,eta_threshold,loss_threshold");
  std::getline(lines, row2);
  CHECK(row2.substr(0, 2) == "2,");
  std::getline(lines, row100);
  const auto comma = row100.find(',');
  const double eta100 = std::stod(row100.substr(comma + 1));
  CHECK(1.0 - eta100 == doctest::Approx(0.0195).epsilon(0.05));
}

TEST_CASE("experiment scenario emits the headline numbers") {
  ExperimentCliParams p;  // defaults are the proposed-experiment values
  const auto out = run_experiment(p);
  const json j = json::parse(out.payload);
  CHECK(j["concurrence_bound"].get<double>() == doctest::Approx(0.0131).epsilon(0.02));
  CHECK(j["photons_mean"].get<double>() == doctest::Approx(1569.0));
  CHECK(j["max_alpha_threshold"]["value"].get<double>() > 28.0);
}

TEST_CASE("measure scenario reports a sound bound chain") {
  MeasureParams p;
  p.alpha = 1.0;
  p.eta_t = 0.7;
  const auto out = run_measure(p);
  const json j = json::parse(out.payload);
  CHECK(j["negativity"].get<double>() == doctest::Approx(0.35).epsilon(1e-3));
  CHECK(j["chou_concurrence_bound"].get<double>() <=
        j["wootters_concurrence"].get<double>() + 1e-8);
}

TEST_CASE("sensitivity scenario: slope column matches the closed form") {
  SensitivityParams p;
  p.alpha2_list = {2.0};
  p.eta_min = 0.75;
  p.eta_max = 0.75;
  p.steps = 0;
  p.simulate = false;
  const auto out = run_sensitivity(p);
  std::istringstream lines(out.payload);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  std::istringstream fields(row);
  std::string a2, eta, slope, classical;
  std::getline(fields, a2, ',');
  std::getline(fields, eta, ',');
  std::getline(fields, slope, ',');
  std::getline(fields, classical, ',');
  // eta = 3/4 is the crossover: slope equals the classical baseline
  CHECK(std::stod(slope) == doctest::Approx(std::stod(classical)).epsilon(1e-12));
}

TEST_CASE("nearest scenario suggestions") {
  CHECK(nearest_scenario("fig3") == "fig2");
  CHECK(nearest_scenario("mesure") == "measure");
  CHECK(nearest_scenario("loss") == "loss-sweep");
  CHECK(scenario_listing().size() == 8);
}

TEST_CASE("full-precision formatting is stable") {
  CHECK(format_number(0.5) == "5.0000000000000000e-01");
  CHECK(format_number(1569.0) == "1.5690000000000000e+03");
}
