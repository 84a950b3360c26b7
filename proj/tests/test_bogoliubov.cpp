#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <sstream>

#include "qcavity/bogoliubov.hpp"

using namespace qcavity;
using cd = std::complex<double>;

namespace {
const FrequencyProfile kFig2 = FrequencyProfile::smooth(0.5, 5.0, 1.0);
}

TEST_CASE("constant profile decouples the equations") {
  const auto traj = integrate_bogoliubov(FrequencyProfile::smooth(1.0, 1.0, 1.0), {});
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    CHECK(std::abs(traj.beta[i]) < 1e-14);
    CHECK(std::abs(std::abs(traj.alpha[i]) - 1.0) < 1e-12);
  }
  CHECK(std::abs(traj.beta_inf) < 1e-13);
  CHECK(std::abs(traj.alpha_inf) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("initial conditions at the left edge") {
  const auto traj = integrate_bogoliubov(kFig2, {});
  CHECK(std::abs(traj.beta.front()) == 0.0);
  const cd a0 = traj.alpha.front() * std::polar(1.0, 0.5 * traj.t_min());
  CHECK(std::abs(a0 - cd(1.0, 0.0)) < 1e-13);
}

TEST_CASE("sudden closed form from a fast smooth switch") {
  // (w2-w1)^2/(4 w1 w2) = 2.025 at w1=0.5, w2=5
  const auto traj = integrate_bogoliubov(FrequencyProfile::smooth(0.5, 5.0, 1e-3), {});
  const double N = dce_photon_number(traj.beta_inf);
  CHECK(std::abs(N - 2.025) / 2.025 < 0.01);
}

TEST_CASE("sudden-kind profile is handled analytically") {
  const auto traj = integrate_bogoliubov(FrequencyProfile::sudden_jump(0.5, 5.0), {});
  const double theta = 0.5 * std::log(10.0);
  CHECK(dce_photon_number(traj.beta_inf) == doctest::Approx(std::sinh(theta) * std::sinh(theta))
                                               .epsilon(1e-14));
  CHECK(dce_photon_number(traj.beta_inf) == doctest::Approx(2.025).epsilon(1e-14));
  // symplectic invariant holds exactly on the analytic trajectory
  for (std::size_t i = 0; i < traj.times.size(); i += 100) {
    const double inv = std::norm(traj.alpha[i]) - std::norm(traj.beta[i]);
    CHECK(inv == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("photon yield is symmetric in the quench direction") {
  const auto up = integrate_bogoliubov(FrequencyProfile::sudden_jump(0.5, 5.0), {});
  const auto down = integrate_bogoliubov(FrequencyProfile::sudden_jump(5.0, 0.5), {});
  CHECK(dce_photon_number(up.beta_inf) ==
        doctest::Approx(dce_photon_number(down.beta_inf)).epsilon(1e-14));
}

TEST_CASE("symplectic invariant along the trajectory") {
  for (const double tau : {1e-3, 0.1, 1.0, 10.0}) {
    CAPTURE(tau);
    const auto traj = integrate_bogoliubov(FrequencyProfile::smooth(0.5, 5.0, tau), {});
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      worst = std::max(worst,
                       std::abs(std::norm(traj.alpha[i]) - std::norm(traj.beta[i]) - 1.0));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("extract_asymptotics consistency") {
  const auto traj = integrate_bogoliubov(kFig2, {});
  const auto [ainf, binf] = extract_asymptotics(traj);
  CHECK(std::abs(ainf - traj.alpha_inf) < 1e-14);
  CHECK(std::abs(binf - traj.beta_inf) < 1e-14);
  // endpoint demodulation agrees with the tail mean to the flatness tolerance
  const cd end_a = traj.alpha.back() * std::polar(1.0, 5.0 * traj.t_max());
  CHECK(std::abs(end_a - ainf) < 1e-6);
  // symplectic invariant at the edge
  CHECK(std::norm(ainf) - std::norm(binf) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("asymptotics stable under window extension") {
  const auto traj = integrate_bogoliubov(kFig2, {});
  NumericsConfig wide;
  wide.window = std::array<double, 2>{traj.t_min(), traj.t_max() * 1.2};
  const auto traj2 = integrate_bogoliubov(kFig2, wide);
  CHECK(std::abs(traj2.beta_inf - traj.beta_inf) / std::abs(traj.beta_inf) < 1e-5);
  CHECK(std::abs(traj2.alpha_inf - traj.alpha_inf) / std::abs(traj.alpha_inf) < 1e-5);
}

TEST_CASE("transient maximum of |beta|^2 exceeds the final value") {
  const auto traj = integrate_bogoliubov(kFig2, {});
  double peak = 0.0;
  for (const cd& b : traj.beta) peak = std::max(peak, std::norm(b));
  const double final_value = dce_photon_number(traj.beta_inf);
  CHECK(peak > final_value);
  CHECK(peak > 5.0 * final_value);  // pronounced for these parameters
}

TEST_CASE("adiabatic suppression") {
  const double N_sudden = 2.025;
  double previous = 1e300;
  for (const double tau : {2.0, 4.0, 8.0}) {
    const auto traj = integrate_bogoliubov(FrequencyProfile::smooth(0.5, 5.0, tau), {});
    const double N = dce_photon_number(traj.beta_inf);
    CHECK(N < previous);
    previous = N;
  }
  // far below the sudden yield well before tau omega1 = 10
  CHECK(previous < 1e-3 * N_sudden);
}

TEST_CASE("grid-halving stability of the photon number") {
  NumericsConfig loose;
  loose.ode_rel_tol = 1e-10;
  loose.ode_abs_tol = 1e-12;
  NumericsConfig tight;
  tight.ode_rel_tol = 5e-11;
  tight.ode_abs_tol = 6e-13;
  const double N1 = dce_photon_number(integrate_bogoliubov(kFig2, loose).beta_inf);
  const double N2 = dce_photon_number(integrate_bogoliubov(kFig2, tight).beta_inf);
  CHECK(std::abs(N1 - N2) < 10.0 * loose.ode_rel_tol * std::max(1.0, N1));
}

TEST_CASE("window too short raises a diagnostic") {
  NumericsConfig cfg;
  cfg.window = std::array<double, 2>{-80.0, 2.0};  // right edge inside the switch
  CHECK_THROWS_AS(integrate_bogoliubov(kFig2, cfg), window_error);
  try {
    integrate_bogoliubov(kFig2, cfg);
  } catch (const window_error& e) {
    CHECK(std::string(e.what()).find("right") != std::string::npos);
  }
}

TEST_CASE("tabulated profile reproduces the smooth dynamics") {
  std::vector<double> ts, ws;
  const auto ref = FrequencyProfile::smooth(0.5, 5.0, 1.0);
  for (double t = -80.0; t <= 25.0 + 1e-9; t += 0.01) {
    ts.push_back(t);
    ws.push_back(ref(t).omega);
  }
  const auto spline = FrequencyProfile::tabulated(ts, ws);
  NumericsConfig cfg;
  cfg.window = std::array<double, 2>{-80.0, 25.0};
  const auto a = integrate_bogoliubov(spline, cfg);
  const auto b = integrate_bogoliubov(ref, cfg);
  CHECK(std::abs(dce_photon_number(a.beta_inf) - dce_photon_number(b.beta_inf)) /
            dce_photon_number(b.beta_inf) <
        1e-4);
}

TEST_CASE("csv export shape and determinism") {
  NumericsConfig cfg;
  cfg.sample_count = 512;
  cfg.window = std::array<double, 2>{-80.0, 25.0};
  const auto traj = integrate_bogoliubov(kFig2, cfg);
  std::ostringstream a, b;
  write_trajectory_csv(a, traj);
  write_trajectory_csv(b, traj);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("t,re_alpha,im_alpha,re_beta,im_beta,beta_sq") != std::string::npos);
  CHECK(a.str().find("# ") == 0);
}
