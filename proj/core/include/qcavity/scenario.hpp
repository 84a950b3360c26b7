#pragma once

// Scenario configuration and runner behind the command-line front end.
// Configs come from a JSON file with a fixed schema; unknown keys anywhere
// are hard errors so typos in physics parameters cannot pass silently.

#include <optional>
#include <string>

#include "qcavity/fock.hpp"
#include "qcavity/model.hpp"

namespace qcavity {

enum class Scenario { fig1, fig2, fig3, fig4, shake, oracle, custom };

struct SweepSpec {
  std::string parameter;  // one of E0, omega1, omega2, lambda, tau
  double min = 0, max = 0;
  int count = 0;
  bool log_spacing = true;
};

struct GridSpec {  // fig1: (rho, xi) grid
  double rho_min = 1.0, rho_max = 30.0;
  int rho_count = 20;
  double xi_min = 0.01, xi_max = 10.0;
  int xi_count = 20;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::fig3;
  ModelParams params;
  NumericsConfig numerics;
  std::optional<SweepSpec> sweep;
  GridSpec grid;
  CouplingModel oracle_coupling = CouplingModel::rotating_wave;
  std::string output_path = "out.csv";
  int jobs = 1;

  void validate() const;

  static ScenarioConfig from_json_string(const std::string& text);
  static ScenarioConfig from_json_file(const std::string& path);
};

Scenario scenario_from_name(const std::string& name);
const char* scenario_name(Scenario s);

/// Execute a scenario, writing its output file(s).  Throws input_error on
/// validation problems and numerics_error/window_error on solver failures,
/// annotated with the sweep point where they occurred.
void run_scenario(const ScenarioConfig& config);

}  // namespace qcavity
