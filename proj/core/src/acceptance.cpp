#include "qcavity/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qcavity/backreaction.hpp"
#include "qcavity/bogoliubov.hpp"
#include "qcavity/fock.hpp"
#include "qcavity/shaking.hpp"
#include "qcavity/sudden.hpp"
#include "qcavity/transient.hpp"

namespace qcavity {

namespace {

ModelParams fig_params() { return {0.8, 0.5, 5.0, 0.05, 1.0}; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- criteria -------------------------------------------------------------

CriterionResult c1_sudden_dce() {
  CriterionResult r{1, "sudden DCE photon number matches the closed form", false, "", 0};
  const auto traj =
      integrate_bogoliubov(FrequencyProfile::smooth(0.5, 5.0, 1e-3), NumericsConfig{});
  const double N = dce_photon_number(traj.beta_inf);
  const double expected = 2.025;  // (w2-w1)^2/(4 w1 w2)
  const double rel = std::abs(N - expected) / expected;
  r.pass = rel < 0.01;
  r.detail = "N = " + fmt(N) + ", closed form 2.025, rel diff " + fmt(rel) + " (tol 1e-2)";
  return r;
}

CriterionResult c2_symplectic() {
  CriterionResult r{2, "symplectic invariant |alpha|^2-|beta|^2 = 1", false, "", 0};
  double worst = 0.0;
  for (const double tau : {1e-3, 0.1, 1.0, 10.0}) {
    const auto traj =
        integrate_bogoliubov(FrequencyProfile::smooth(0.5, 5.0, tau), NumericsConfig{});
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      const double inv = std::norm(traj.alpha[i]) - std::norm(traj.beta[i]);
      worst = std::max(worst, std::abs(inv - 1.0));
    }
  }
  r.pass = worst <= 1e-9;
  r.detail = "max |invariant - 1| = " + fmt(worst) + " over tau in {1e-3,0.1,1,10} (tol 1e-9)";
  return r;
}

CriterionResult c3_rho_symmetry() {
  CriterionResult r{3, "w_up symmetric under rho -> 1/rho", false, "", 0};
  double worst = 0.0;
  for (const double rho : {1.5, 3.0, 10.0, 30.0})
    for (const double xi : {0.05, 0.5, 5.0}) {
      const double a = excitation_probability_sudden(rho, xi, 1e-14);
      const double b = excitation_probability_sudden(1.0 / rho, xi, 1e-14);
      worst = std::max(worst, std::abs(a - b));
    }
  r.pass = worst < 1e-12;
  r.detail = "max |w(rho) - w(1/rho)| = " + fmt(worst) + " (tol 1e-12)";
  return r;
}

CriterionResult c4_weak_coupling() {
  CriterionResult r{4, "weak-coupling form consistent with the full series", false, "", 0};
  auto reldiff = [](double xi) {
    const double w10 = excitation_probability_sudden(10.0, xi, 1e-14);
    const double w11 = excitation_weak_coupling(10.0, xi);
    return std::abs(w11 - w10) / w10;
  };
  const double d_half = reldiff(0.05);
  const double d_full = reldiff(0.1);
  const double shrink = d_full / d_half;
  const bool small_enough = d_half < 1e-3;
  const bool quartic = shrink >= 8.0;
  r.pass = small_enough && quartic;
  r.detail = "rel diff at xi=0.05: " + fmt(d_half) + " (tol 1e-3), shrink at xi 0.1->0.05: " +
             fmt(shrink) + "x (need >= 8)";
  return r;
}

CriterionResult c5_strong_coupling() {
  CriterionResult r{5, "strong-coupling limit of the series", false, "", 0};
  const double w10 = excitation_probability_sudden(10.0, 100.0, 1e-14);
  const double w12 = excitation_strong_coupling(10.0);
  const double rel_a = std::abs(w10 - w12) / w12;
  const double w12_far = excitation_strong_coupling(1000.0);
  const double rel_b = std::abs(w12_far - 0.5) / 0.5;
  r.pass = rel_a < 0.02 && rel_b < 0.02;
  r.detail = "series(xi=100) vs limit at rho=10: " + fmt(rel_a) +
             " (tol 2e-2); limit at rho=1e3 vs 1/2: " + fmt(rel_b) + " (tol 2e-2)";
  return r;
}

CriterionResult c6_squeezed_norm() {
  CriterionResult r{6, "squeezed vacuum normalized", false, "", 0};
  double worst = 0.0;
  for (const double rho : {2.0, 10.0, 100.0}) {
    const auto sv = squeezed_vacuum_amplitudes(rho, 1e-14);
    worst = std::max(worst, std::abs(sv.norm_deficit));
  }
  r.pass = worst < 1e-10;
  r.detail = "max |1 - sum c^2| = " + fmt(worst) + " over rho in {2,10,100} (tol 1e-10)";
  return r;
}

CriterionResult c7_efficiency() {
  CriterionResult r{7, "excitation efficiency F: F(0)=1, F>1, and large values", false, "", 0};
  const ModelParams p = fig_params();
  const double tau0 = 1e-3 * std::min(1.0 / p.omega2, 1.0 / p.E0);
  const auto traj0 =
      integrate_bogoliubov(FrequencyProfile::smooth(p.omega1, p.omega2, tau0), NumericsConfig{});
  const double F0 = excitation_efficiency_F(traj0, p.E0);
  const bool at_unity = std::abs(F0 - 1.0) <= 1e-3;

  bool above_one = true;
  for (const double tau : {0.2, 0.5, 1.0, 2.0}) {
    const auto traj =
        integrate_bogoliubov(FrequencyProfile::smooth(p.omega1, p.omega2, tau), NumericsConfig{});
    above_one = above_one && excitation_efficiency_F(traj, p.E0) > 1.0;
  }

  double fmax = 0.0;
  for (const double tau : log_grid(0.1, 10.0, 15)) {
    const auto traj =
        integrate_bogoliubov(FrequencyProfile::smooth(p.omega1, p.omega2, tau), NumericsConfig{});
    fmax = std::max(fmax, excitation_efficiency_F(traj, p.E0));
  }
  r.pass = at_unity && above_one && fmax > 10.0;
  r.detail = "F(" + fmt(tau0) + ") = " + fmt(F0) + " (|F-1| tol 1e-3); F>1 for tau in {0.2,0.5,1,2}: " +
             (above_one ? "yes" : "no") + "; max F over [0.1,10] = " + fmt(fmax) + " (need > 10)";
  return r;
}

CriterionResult c8_shaking() {
  CriterionResult r{8, "shaking probability identities and value", false, "", 0};
  const ModelParams p = fig_params();
  const auto rep = shaking_probability(p);
  const double d = 1.0 / (p.omega2 + p.E0) - 1.0 / (p.omega1 + p.E0);
  const double direct = p.lambda * p.lambda * d * d;
  const double via_shift = (rep.delta_E_L / p.lambda) * (rep.delta_E_L / p.lambda);
  const double err_direct = std::abs(rep.w_shake - direct);
  const double err_shift = std::abs(rep.w_shake - via_shift);
  const double err_value = std::abs(rep.w_shake - 8.905e-4);
  r.pass = err_direct <= 1e-14 && err_shift <= 1e-14 && err_value <= 1e-7;
  r.detail = "w_shake = " + fmt(rep.w_shake) + "; |vs direct| = " + fmt(err_direct) +
             ", |vs (dE_L/lambda)^2| = " + fmt(err_shift) + " (tol 1e-14); |vs 8.905e-4| = " +
             fmt(err_value) + " (tol 1e-7)";
  return r;
}

double tail_mean_odd(const OracleRun& run, double period) {
  const double t_max = run.records.back().time;
  const int K = std::max(1, static_cast<int>(std::floor(0.1 * t_max / period)));
  const double t0 = t_max - K * period;
  double acc = 0.0;
  long n = 0;
  for (const auto& rec : run.records)
    if (rec.time >= t0) {
      acc += rec.odd_weight;
      ++n;
    }
  return acc / n;
}

CriterionResult c9_parity() {
  CriterionResult r{9, "photon parity: even-only without the atom, lambda^2 odd channel", false,
                    "", 0};
  ModelParams p = fig_params();
  NumericsConfig cfg;
  cfg.fock_max = 48;
  const auto profile = profile_for(p);
  const double period = 2.0 * std::numbers::pi / std::abs(p.detuning());

  ModelParams p0 = p;
  p0.lambda = 0.0;
  const auto run0 = evolve(p0, profile, cfg, CouplingModel::full);
  double odd_max = 0.0;
  for (const auto& rec : run0.records) odd_max = std::max(odd_max, rec.odd_weight);

  ModelParams p1 = p;
  p1.lambda = 0.01;
  const double odd1 = tail_mean_odd(evolve(p1, profile, cfg, CouplingModel::full), period);
  ModelParams p2 = p;
  p2.lambda = 0.02;
  const double odd2 = tail_mean_odd(evolve(p2, profile, cfg, CouplingModel::full), period);
  const double ratio = odd2 / odd1;

  r.pass = odd_max < 1e-12 && odd1 > 0.0 && ratio > 3.2 && ratio < 4.8;
  r.detail = "max odd weight at lambda=0: " + fmt(odd_max) + " (tol 1e-12); odd(2l)/odd(l) = " +
             fmt(ratio) + " (need 4 +- 20%)";
  return r;
}

CriterionResult c10_oracle_vs_perturbation() {
  CriterionResult r{10, "oracle matches transient first order and the sudden series", false, "",
                    0};
  ModelParams p = fig_params();
  p.lambda = 0.01;
  NumericsConfig cfg;

  const auto run1 = evolve(p, profile_for(p), cfg, CouplingModel::rotating_wave);
  const auto traj = integrate_bogoliubov(profile_for(p), cfg);
  const double w_tr = excitation_probability_transient(traj, p).w_up;
  const double rel1 = std::abs(run1.w_up_asymptotic - w_tr) / w_tr;

  ModelParams ps = p;
  ps.tau = 1e-3;
  NumericsConfig cfg_s;
  cfg_s.fock_max = 96;
  const auto run2 = evolve(ps, profile_for(ps), cfg_s, CouplingModel::rotating_wave);
  const double w_ser =
      excitation_probability_sudden(ps.rho(), ps.lambda / ps.detuning(), cfg.series_tol);
  const double rel2 = std::abs(run2.w_up_asymptotic - w_ser) / w_ser;

  r.pass = rel1 < 0.01 && rel2 < 0.01;
  r.detail = "tau=1: rel diff " + fmt(rel1) + "; tau=1e-3: rel diff " + fmt(rel2) +
             " (tol 1e-2 each)";
  return r;
}

CriterionResult c11_eta_scaling() {
  CriterionResult r{11, "back-reaction coefficient: tau^2 onset, linear growth, lambda-free",
                    false, "", 0};
  ModelParams p = fig_params();
  NumericsConfig cfg;

  auto eta_at = [&](double tau, double lambda) {
    ModelParams q = p;
    q.tau = tau;
    q.lambda = lambda;
    return eta(q, cfg).eta;
  };

  // small-tau window tau E0 in [0.05, 0.2]
  std::vector<double> lx, ly;
  bool sign_change = false;
  double first_sign = 0.0;
  for (const double tau : log_grid(0.05 / p.E0, 0.2 / p.E0, 5)) {
    const double e = eta_at(tau, p.lambda);
    if (first_sign == 0.0) first_sign = e;
    if (e * first_sign <= 0.0) sign_change = true;
    lx.push_back(std::log(tau));
    ly.push_back(std::log(std::abs(e)));
  }
  const double slope_small = fit_slope(lx, ly);
  const bool small_ok = !sign_change && std::abs(slope_small - 2.0) <= 0.2;
  std::string small_note = "slope(|eta|) on tau E0 [0.05,0.2]: " + fmt(slope_small) +
                           " (need 2 +- 0.2" +
                           (sign_change ? ", eta changes sign inside this window" : "") + ")";

  // large-tau window tau E0 in [3, 10]
  bool large_ok = false;
  std::string large_note;
  try {
    lx.clear();
    ly.clear();
    for (const double tau : log_grid(3.0 / p.E0, 10.0 / p.E0, 5)) {
      const double e = eta_at(tau, p.lambda);
      lx.push_back(std::log(tau));
      ly.push_back(std::log(std::abs(e)));
    }
    const double slope_large = fit_slope(lx, ly);
    large_ok = std::abs(slope_large - 1.0) <= 0.2;
    large_note = "on [3,10]: " + fmt(slope_large) + " (need 1 +- 0.2)";
  } catch (const std::exception& e) {
    large_note = std::string("on [3,10]: unreachable, ") + e.what();
  }

  const double e1 = eta_at(1.0, 0.01);
  const double e2 = eta_at(1.0, 0.1);
  const double lam_free = std::abs(e2 - e1) / std::abs(e1);
  const bool lam_ok = lam_free < 1e-10;

  r.pass = small_ok && large_ok && lam_ok;
  r.detail = small_note + "; " + large_note + "; lambda dependence: " + fmt(lam_free) +
             " (tol 1e-10)";
  return r;
}

CriterionResult c12_bookkeeping() {
  CriterionResult r{12, "mean photon number bookkeeping n = N_dce - w_up", false, "", 0};
  const double series_tol = 1e-14;
  const auto m = mean_photons_with_atom(10.0, 0.05, series_tol);
  const double err = std::abs(m.n_bar_direct - m.n_bar);
  r.pass = err <= 10.0 * series_tol;
  r.detail = "|direct sum - (N_dce - w_up)| = " + fmt(err) + " (tol 1e-13)";
  return r;
}

CriterionResult c13_N_conservation() {
  CriterionResult r{13, "the excitation-number operator is conserved at constant omega", false,
                    "", 0};
  ModelParams p;
  p.E0 = 0.8;
  p.omega1 = 1.0;
  p.omega2 = 1.0;
  p.lambda = 0.5;
  p.tau = 1.0;
  const auto profile = FrequencyProfile::smooth(1.0, 1.0, 1.0);  // constant

  // Rabi period of the n = 1 doublet; run 100 of them with a state that
  // actually oscillates (|0,down> alone is stationary)
  const double split = 2.0 * std::sqrt(0.25 * p.detuning() * p.detuning() + p.lambda * p.lambda);
  const double T = 2.0 * std::numbers::pi / split;
  NumericsConfig cfg;
  cfg.fock_max = 16;
  cfg.window = std::array<double, 2>{-1.0, 100.0 * T};
  cfg.sample_count = 4001;

  Eigen::VectorXcd init = Eigen::VectorXcd::Zero(2 * (cfg.fock_max + 1));
  init[0] = 1.0 / std::sqrt(3.0);  // |0,down>
  init[1] = 1.0 / std::sqrt(3.0);  // |0,up>
  init[2] = 1.0 / std::sqrt(3.0);  // |1,down>
  const auto run = evolve(p, profile, cfg, CouplingModel::rotating_wave, &init);

  const double N0 = run.records.front().N_expectation;
  double drift = 0.0, rabi_amp = 0.0;
  for (const auto& rec : run.records) {
    drift = std::max(drift, std::abs(rec.N_expectation - N0));
    rabi_amp = std::max(rabi_amp, std::abs(rec.P_excited - run.records.front().P_excited));
  }
  r.pass = drift <= 1e-8 && rabi_amp > 0.1;
  r.detail = "max |<N>(t) - <N>(0)| = " + fmt(drift) + " over 100 Rabi periods (tol 1e-8); " +
             "Rabi contrast " + fmt(rabi_amp);
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int only) {
  using Fn = std::function<CriterionResult()>;
  const std::vector<Fn> criteria = {
      c1_sudden_dce,   c2_symplectic,    c3_rho_symmetry, c4_weak_coupling,
      c5_strong_coupling, c6_squeezed_norm, c7_efficiency,   c8_shaking,
      c9_parity,       c10_oracle_vs_perturbation, c11_eta_scaling, c12_bookkeeping,
      c13_N_conservation};

  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only > 0 && static_cast<int>(i + 1) != only) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = criteria[i]();
    } catch (const std::exception& e) {
      res.id = static_cast<int>(i + 1);
      res.name = "criterion " + std::to_string(i + 1);
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(res);
  }
  return results;
}

int print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << " -- " << r.detail
       << "  (" << fmt(r.seconds) << " s)\n";
    if (!r.pass) ++failures;
  }
  os << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
     << "\n";
  return failures;
}

}  // namespace qcavity
