#include "qcavity/scenario.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "csv.hpp"
#include "qcavity/backreaction.hpp"
#include "qcavity/bogoliubov.hpp"
#include "qcavity/shaking.hpp"
#include "qcavity/sudden.hpp"
#include "qcavity/transient.hpp"

namespace qcavity {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw input_error("config: unknown key \"" + it.key() + "\" in " + where);
  }
}

double need_number(const json& j, const char* key, const std::string& where) {
  if (!j.at(key).is_number())
    throw input_error("config: \"" + std::string(key) + "\" in " + where + " must be a number");
  return j.at(key).get<double>();
}

std::vector<double> make_grid(double lo, double hi, int count, bool log_spacing) {
  if (count < 2) throw input_error("grid: count must be >= 2");
  if (log_spacing && (lo <= 0 || hi <= 0))
    throw input_error("grid: log spacing needs positive bounds");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    g[i] = log_spacing ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
  }
  return g;
}

void set_sweep_value(ModelParams& p, const std::string& name, double v) {
  if (name == "E0") p.E0 = v;
  else if (name == "omega1") p.omega1 = v;
  else if (name == "omega2") p.omega2 = v;
  else if (name == "lambda") p.lambda = v;
  else if (name == "tau") p.tau = v;
  else throw input_error("sweep: parameter must name a model field, got \"" + name + "\"");
}

// deterministic index-parallel map: output depends only on the index
void parallel_for(int n, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next.store(n);
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class F>
auto at_sweep_point(const char* param, double value, F&& f) {
  try {
    return f();
  } catch (const input_error& e) {
    std::ostringstream msg;
    msg << e.what() << " (at sweep point " << param << " = " << value << ")";
    throw input_error(msg.str());
  } catch (const window_error& e) {
    std::ostringstream msg;
    msg << e.what() << " (at sweep point " << param << " = " << value << ")";
    throw window_error(msg.str());
  } catch (const numerics_error& e) {
    std::ostringstream msg;
    msg << e.what() << " (at sweep point " << param << " = " << value << ")";
    throw numerics_error(msg.str());
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw input_error("cannot open output file \"" + path + "\"");
  return os;
}

void run_fig1(const ScenarioConfig& c) {
  const auto rhos = make_grid(c.grid.rho_min, c.grid.rho_max, c.grid.rho_count, true);
  const auto xis = make_grid(c.grid.xi_min, c.grid.xi_max, c.grid.xi_count, true);
  const int n = static_cast<int>(rhos.size() * xis.size());
  std::vector<double> w(n);
  parallel_for(n, c.jobs, [&](int i) {
    const double rho = rhos[i / xis.size()];
    const double xi = xis[i % xis.size()];
    w[i] = excitation_probability_sudden(rho, xi, c.numerics.series_tol);
  });
  auto os = open_output(c.output_path);
  detail::MetaWriter meta(os);
  meta.kv("content", "sudden-limit excitation probability grid");
  meta.kv("series_tol", c.numerics.series_tol);
  os << "rho,xi,w_up\n";
  for (int i = 0; i < n; ++i)
    os << detail::fmt(rhos[i / xis.size()]) << ',' << detail::fmt(xis[i % xis.size()]) << ','
       << detail::fmt(w[i]) << '\n';
}

SweepSpec default_tau_sweep(Scenario s) {
  SweepSpec sp;
  sp.parameter = "tau";
  sp.log_spacing = true;
  if (s == Scenario::fig2) {
    sp.min = 0.01;
    sp.max = 10.0;
    sp.count = 33;
  } else {  // fig4: keep within the range where the adiabatic baseline is resolvable
    sp.min = 0.02;
    sp.max = 5.0;
    sp.count = 25;
  }
  return sp;
}

void run_fig2(const ScenarioConfig& c) {
  const SweepSpec sp = c.sweep.value_or(default_tau_sweep(Scenario::fig2));
  if (sp.parameter != "tau")
    throw input_error("fig2 sweeps tau; use the custom scenario for other parameters");
  const auto taus = make_grid(sp.min, sp.max, sp.count, sp.log_spacing);
  std::vector<TransientResult> results(taus.size());
  parallel_for(static_cast<int>(taus.size()), c.jobs, [&](int i) {
    at_sweep_point("tau", taus[i], [&] {
      ModelParams p = c.params;
      p.tau = taus[i];
      const auto traj = integrate_bogoliubov(profile_for(p), c.numerics);
      results[i] = excitation_probability_transient(traj, p);
      return 0;
    });
  });
  auto os = open_output(c.output_path);
  write_transient_sweep_csv(os, c.params, taus, results, c.numerics);
}

void run_fig3(const ScenarioConfig& c) {
  const auto traj = integrate_bogoliubov(profile_for(c.params), c.numerics);
  auto os = open_output(c.output_path);
  write_trajectory_csv(os, traj);
}

void run_fig4(const ScenarioConfig& c) {
  const SweepSpec sp = c.sweep.value_or(default_tau_sweep(Scenario::fig4));
  if (sp.parameter != "tau")
    throw input_error("fig4 sweeps tau; use the custom scenario for other parameters");
  const auto taus = make_grid(sp.min, sp.max, sp.count, sp.log_spacing);
  std::vector<BackreactionResult> results(taus.size());
  std::vector<double> wup(taus.size(), 0.0);
  parallel_for(static_cast<int>(taus.size()), c.jobs, [&](int i) {
    at_sweep_point("tau", taus[i], [&] {
      ModelParams p = c.params;
      p.tau = taus[i];
      results[i] = eta(p, c.numerics);
      const auto traj = integrate_bogoliubov(profile_for(p), c.numerics);
      wup[i] = excitation_probability_transient(traj, p).w_up;
      return 0;
    });
  });
  auto os = open_output(c.output_path);
  write_eta_sweep_csv(os, c.params, taus, results, wup, c.numerics);
}

void run_shake(const ScenarioConfig& c) {
  const auto report = shaking_probability(c.params);
  auto os = open_output(c.output_path);
  write_shaking_report(os, c.params, report);
}

void run_oracle(const ScenarioConfig& c) {
  const auto report = oracle_cross_checks(c.params, c.numerics);
  auto os = open_output(c.output_path);
  write_cross_check_report(os, report);
  // both Hamiltonian variants exported alongside the report, observables plus
  // the final photon distribution
  for (const auto mode : {CouplingModel::full, CouplingModel::rotating_wave}) {
    const auto run = evolve(c.params, profile_for(c.params), c.numerics, mode);
    const std::string tag = mode == CouplingModel::full ? ".full" : ".rwa";
    auto traj_os = open_output(c.output_path + tag + ".csv");
    write_oracle_csv(traj_os, run, c.params);
    auto dist_os = open_output(c.output_path + tag + ".dist.csv");
    write_distribution_csv(dist_os, run, c.params);
  }
}

void run_custom(const ScenarioConfig& c) {
  if (!c.sweep) throw input_error("custom scenario requires a sweep specification");
  const SweepSpec& sp = *c.sweep;
  const auto values = make_grid(sp.min, sp.max, sp.count, sp.log_spacing);

  struct Row {
    double N_dce = 0, F = 0, w_up = 0, w_shake = 0, eta_v = 0, dninf = 0;
  };
  std::vector<Row> rows(values.size());
  parallel_for(static_cast<int>(values.size()), c.jobs, [&](int i) {
    at_sweep_point(sp.parameter.c_str(), values[i], [&] {
      ModelParams p = c.params;
      set_sweep_value(p, sp.parameter, values[i]);
      Row r;
      const auto traj = integrate_bogoliubov(profile_for(p), c.numerics);
      const auto tr = excitation_probability_transient(traj, p);
      r.N_dce = tr.N_dce;
      r.F = tr.F;
      r.w_up = tr.w_up;
      r.w_shake = shaking_probability(p).w_shake;
      const auto br = eta(p, c.numerics);
      r.eta_v = br.eta;
      r.dninf = br.delta_N_inf;
      rows[i] = r;
      return 0;
    });
  });
  auto os = open_output(c.output_path);
  detail::MetaWriter meta(os);
  meta.kv("content", "parameter sweep");
  meta.params(c.params);
  meta.kv("sweep_parameter", sp.parameter);
  os << sp.parameter << ",N_dce,F,w_up,w_shake,eta,delta_N_inf\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    os << detail::fmt(values[i]) << ',' << detail::fmt(rows[i].N_dce) << ','
       << detail::fmt(rows[i].F) << ',' << detail::fmt(rows[i].w_up) << ','
       << detail::fmt(rows[i].w_shake) << ',' << detail::fmt(rows[i].eta_v) << ','
       << detail::fmt(rows[i].dninf) << '\n';
}

}  // namespace

Scenario scenario_from_name(const std::string& name) {
  if (name == "fig1" || name == "fig1_sudden_grid") return Scenario::fig1;
  if (name == "fig2" || name == "fig2_transient_sweep") return Scenario::fig2;
  if (name == "fig3" || name == "fig3_beta_trace") return Scenario::fig3;
  if (name == "fig4" || name == "fig4_eta_sweep") return Scenario::fig4;
  if (name == "shake" || name == "shaking_report") return Scenario::shake;
  if (name == "oracle" || name == "oracle_check") return Scenario::oracle;
  if (name == "custom") return Scenario::custom;
  throw input_error("unknown scenario \"" + name + "\"");
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::fig1: return "fig1";
    case Scenario::fig2: return "fig2";
    case Scenario::fig3: return "fig3";
    case Scenario::fig4: return "fig4";
    case Scenario::shake: return "shake";
    case Scenario::oracle: return "oracle";
    case Scenario::custom: return "custom";
  }
  return "?";
}

void ScenarioConfig::validate() const {
  params.validate();
  numerics.validate();
  if (sweep) {
    if (sweep->count < 2) throw input_error("sweep: count must be >= 2");
    ModelParams probe = params;
    set_sweep_value(probe, sweep->parameter, sweep->min);  // also validates the name
    if (!(sweep->min < sweep->max)) throw input_error("sweep: need min < max");
  }
  if (output_path.empty()) throw input_error("output path must not be empty");
  if (jobs < 1) throw input_error("jobs must be >= 1");
}

ScenarioConfig ScenarioConfig::from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("config: JSON parse error: ") + e.what());
  }
  reject_unknown(j, {"scenario", "params", "numerics", "sweep", "grid", "oracle", "output",
                     "jobs"},
                 "the top level");

  ScenarioConfig c;
  if (j.contains("scenario")) c.scenario = scenario_from_name(j["scenario"].get<std::string>());
  if (j.contains("params")) {
    const json& p = j["params"];
    reject_unknown(p, {"E0", "omega1", "omega2", "lambda", "tau"}, "params");
    if (p.contains("E0")) c.params.E0 = need_number(p, "E0", "params");
    if (p.contains("omega1")) c.params.omega1 = need_number(p, "omega1", "params");
    if (p.contains("omega2")) c.params.omega2 = need_number(p, "omega2", "params");
    if (p.contains("lambda")) c.params.lambda = need_number(p, "lambda", "params");
    if (p.contains("tau")) c.params.tau = need_number(p, "tau", "params");
  }
  if (j.contains("numerics")) {
    const json& nconf = j["numerics"];
    reject_unknown(nconf,
                   {"ode_rel_tol", "ode_abs_tol", "series_tol", "fock_max", "sample_count",
                    "truncation_tol", "window"},
                   "numerics");
    if (nconf.contains("ode_rel_tol")) c.numerics.ode_rel_tol = need_number(nconf, "ode_rel_tol", "numerics");
    if (nconf.contains("ode_abs_tol")) c.numerics.ode_abs_tol = need_number(nconf, "ode_abs_tol", "numerics");
    if (nconf.contains("series_tol")) c.numerics.series_tol = need_number(nconf, "series_tol", "numerics");
    if (nconf.contains("fock_max")) c.numerics.fock_max = nconf["fock_max"].get<int>();
    if (nconf.contains("sample_count")) c.numerics.sample_count = nconf["sample_count"].get<int>();
    if (nconf.contains("truncation_tol"))
      c.numerics.truncation_tol = need_number(nconf, "truncation_tol", "numerics");
    if (nconf.contains("window")) {
      const auto w = nconf["window"].get<std::vector<double>>();
      if (w.size() != 2) throw input_error("config: numerics.window must be [t_min, t_max]");
      c.numerics.window = std::array<double, 2>{w[0], w[1]};
    }
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    reject_unknown(s, {"parameter", "min", "max", "count", "spacing"}, "sweep");
    SweepSpec sp;
    sp.parameter = s.at("parameter").get<std::string>();
    sp.min = need_number(s, "min", "sweep");
    sp.max = need_number(s, "max", "sweep");
    sp.count = s.at("count").get<int>();
    if (s.contains("spacing")) {
      const auto sc = s["spacing"].get<std::string>();
      if (sc == "log") sp.log_spacing = true;
      else if (sc == "lin") sp.log_spacing = false;
      else throw input_error("config: sweep.spacing must be \"lin\" or \"log\"");
    }
    c.sweep = sp;
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, {"rho_min", "rho_max", "rho_count", "xi_min", "xi_max", "xi_count"},
                   "grid");
    if (g.contains("rho_min")) c.grid.rho_min = need_number(g, "rho_min", "grid");
    if (g.contains("rho_max")) c.grid.rho_max = need_number(g, "rho_max", "grid");
    if (g.contains("rho_count")) c.grid.rho_count = g["rho_count"].get<int>();
    if (g.contains("xi_min")) c.grid.xi_min = need_number(g, "xi_min", "grid");
    if (g.contains("xi_max")) c.grid.xi_max = need_number(g, "xi_max", "grid");
    if (g.contains("xi_count")) c.grid.xi_count = g["xi_count"].get<int>();
  }
  if (j.contains("oracle")) {
    const json& o = j["oracle"];
    reject_unknown(o, {"coupling"}, "oracle");
    if (o.contains("coupling")) {
      const auto m = o["coupling"].get<std::string>();
      if (m == "full") c.oracle_coupling = CouplingModel::full;
      else if (m == "rwa" || m == "rotating_wave") c.oracle_coupling = CouplingModel::rotating_wave;
      else throw input_error("config: oracle.coupling must be \"full\" or \"rwa\"");
    }
  }
  if (j.contains("output")) c.output_path = j["output"].get<std::string>();
  if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  return c;
}

ScenarioConfig ScenarioConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read config file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_string(buf.str());
}

void run_scenario(const ScenarioConfig& config) {
  config.validate();
  switch (config.scenario) {
    case Scenario::fig1: run_fig1(config); return;
    case Scenario::fig2: run_fig2(config); return;
    case Scenario::fig3: run_fig3(config); return;
    case Scenario::fig4: run_fig4(config); return;
    case Scenario::shake: run_shake(config); return;
    case Scenario::oracle: run_oracle(config); return;
    case Scenario::custom: run_custom(config); return;
  }
  throw input_error("run_scenario: invalid scenario");
}

}  // namespace qcavity
