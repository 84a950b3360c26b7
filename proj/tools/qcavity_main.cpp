// Command-line front end: figure-data reproduction, parameter sweeps, the
// oracle comparison report, and the acceptance suite.
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 acceptance failure.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qcavity/acceptance.hpp"
#include "qcavity/errors.hpp"
#include "qcavity/scenario.hpp"
#include "qcavity/version.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string output;
  std::optional<double> E0, omega1, omega2, lambda, tau;
  std::optional<double> rel_tol, abs_tol, series_tol, truncation_tol;
  std::optional<int> fock_max, samples, jobs;
  std::optional<std::vector<double>> window;
  // sweep overrides
  std::optional<std::string> sweep_param;
  std::optional<double> sweep_min, sweep_max;
  std::optional<int> sweep_count;
  std::optional<std::string> spacing;
  // fig1 grid overrides
  std::optional<double> rho_min, rho_max, xi_min, xi_max;
  std::optional<int> rho_count, xi_count;
  std::optional<std::string> coupling;
};

void add_common(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON config file (flags override its fields)");
  cmd->add_option("-o,--output", o.output, "output file path");
  cmd->add_option("--E0", o.E0, "atomic transition frequency");
  cmd->add_option("--omega1", o.omega1, "initial mode frequency");
  cmd->add_option("--omega2", o.omega2, "final mode frequency");
  cmd->add_option("--lambda", o.lambda, "atom-field coupling");
  cmd->add_option("--tau", o.tau, "switching time (0 = instantaneous)");
  cmd->add_option("--rel-tol", o.rel_tol, "ODE relative tolerance");
  cmd->add_option("--abs-tol", o.abs_tol, "ODE absolute tolerance");
  cmd->add_option("--series-tol", o.series_tol, "series truncation threshold");
  cmd->add_option("--truncation-tol", o.truncation_tol, "oracle top-level population bound");
  cmd->add_option("--fock-max", o.fock_max, "Fock truncation for the oracle");
  cmd->add_option("--samples", o.samples, "output grid resolution (0 = auto)");
  cmd->add_option("--jobs", o.jobs, "sweep worker threads");
  cmd->add_option("--window", o.window, "integration window t_min t_max")->expected(2);
}

void add_sweep(CLI::App* cmd, CliOptions& o, bool with_param) {
  if (with_param) cmd->add_option("--param", o.sweep_param, "model field to sweep");
  cmd->add_option("--min", o.sweep_min, "sweep minimum");
  cmd->add_option("--max", o.sweep_max, "sweep maximum");
  cmd->add_option("--count", o.sweep_count, "sweep point count");
  cmd->add_option("--spacing", o.spacing, "lin or log")
      ->check(CLI::IsMember({"lin", "log"}));
}

qcavity::ScenarioConfig assemble(qcavity::Scenario scenario, const CliOptions& o) {
  using qcavity::ScenarioConfig;
  ScenarioConfig c = o.config_path.empty() ? ScenarioConfig{}
                                           : ScenarioConfig::from_json_file(o.config_path);
  c.scenario = scenario;
  if (!o.output.empty()) c.output_path = o.output;
  if (o.E0) c.params.E0 = *o.E0;
  if (o.omega1) c.params.omega1 = *o.omega1;
  if (o.omega2) c.params.omega2 = *o.omega2;
  if (o.lambda) c.params.lambda = *o.lambda;
  if (o.tau) c.params.tau = *o.tau;
  if (o.rel_tol) c.numerics.ode_rel_tol = *o.rel_tol;
  if (o.abs_tol) c.numerics.ode_abs_tol = *o.abs_tol;
  if (o.series_tol) c.numerics.series_tol = *o.series_tol;
  if (o.truncation_tol) c.numerics.truncation_tol = *o.truncation_tol;
  if (o.fock_max) c.numerics.fock_max = *o.fock_max;
  if (o.samples) c.numerics.sample_count = *o.samples;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.window) c.numerics.window = std::array<double, 2>{(*o.window)[0], (*o.window)[1]};

  if (o.sweep_param || o.sweep_min || o.sweep_max || o.sweep_count || o.spacing) {
    qcavity::SweepSpec sp = c.sweep.value_or(qcavity::SweepSpec{"tau", 0.01, 10.0, 33, true});
    if (o.sweep_param) sp.parameter = *o.sweep_param;
    if (o.sweep_min) sp.min = *o.sweep_min;
    if (o.sweep_max) sp.max = *o.sweep_max;
    if (o.sweep_count) sp.count = *o.sweep_count;
    if (o.spacing) sp.log_spacing = *o.spacing == "log";
    c.sweep = sp;
  }
  if (o.rho_min) c.grid.rho_min = *o.rho_min;
  if (o.rho_max) c.grid.rho_max = *o.rho_max;
  if (o.rho_count) c.grid.rho_count = *o.rho_count;
  if (o.xi_min) c.grid.xi_min = *o.xi_min;
  if (o.xi_max) c.grid.xi_max = *o.xi_max;
  if (o.xi_count) c.grid.xi_count = *o.xi_count;
  if (o.coupling)
    c.oracle_coupling = (*o.coupling == "full") ? qcavity::CouplingModel::full
                                                : qcavity::CouplingModel::rotating_wave;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcavity: two-level atom in a cavity with time-dependent mode frequency"};
  app.set_version_flag("--version", qcavity::version_string);
  app.require_subcommand(1);

  CliOptions o;

  auto* fig1 = app.add_subcommand("fig1", "sudden-limit excitation grid over (rho, xi)");
  add_common(fig1, o);
  fig1->add_option("--rho-min", o.rho_min);
  fig1->add_option("--rho-max", o.rho_max);
  fig1->add_option("--rho-count", o.rho_count);
  fig1->add_option("--xi-min", o.xi_min);
  fig1->add_option("--xi-max", o.xi_max);
  fig1->add_option("--xi-count", o.xi_count);

  auto* fig2 = app.add_subcommand("fig2", "excitation probability and efficiency vs tau");
  add_common(fig2, o);
  add_sweep(fig2, o, false);

  auto* fig3 = app.add_subcommand("fig3", "mode-function trajectory |beta(t)|^2");
  add_common(fig3, o);

  auto* fig4 = app.add_subcommand("fig4", "back-reaction coefficient eta vs tau");
  add_common(fig4, o);
  add_sweep(fig4, o, false);

  auto* shake = app.add_subcommand("shake", "Lamb shifts and shaking excitation report");
  add_common(shake, o);

  auto* oracle = app.add_subcommand("oracle", "exact-evolution cross-check report");
  add_common(oracle, o);
  oracle->add_option("--coupling", o.coupling, "full or rwa")
      ->check(CLI::IsMember({"full", "rwa"}));

  auto* sweep = app.add_subcommand("sweep", "sweep any model parameter, wide CSV output");
  add_common(sweep, o);
  add_sweep(sweep, o, true);

  auto* check = app.add_subcommand("check", "run the acceptance suite");
  int only = 0;
  check->add_option("--criterion", only, "run a single criterion by number");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      const auto results = qcavity::run_acceptance(only);
      const int failures = qcavity::print_acceptance(std::cout, results);
      return failures == 0 ? 0 : 3;
    }
    qcavity::Scenario scenario = qcavity::Scenario::custom;
    if (fig1->parsed()) scenario = qcavity::Scenario::fig1;
    else if (fig2->parsed()) scenario = qcavity::Scenario::fig2;
    else if (fig3->parsed()) scenario = qcavity::Scenario::fig3;
    else if (fig4->parsed()) scenario = qcavity::Scenario::fig4;
    else if (shake->parsed()) scenario = qcavity::Scenario::shake;
    else if (oracle->parsed()) scenario = qcavity::Scenario::oracle;
    else if (sweep->parsed()) scenario = qcavity::Scenario::custom;

    const auto config = assemble(scenario, o);
    qcavity::run_scenario(config);
    std::cout << "wrote " << config.output_path << "\n";
    return 0;
  } catch (const qcavity::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const qcavity::numerics_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
