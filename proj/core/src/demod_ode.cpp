#include "demod_ode.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <sstream>

namespace qcavity::detail {

namespace {

using state_type = std::array<double, 11>;
using cd = std::complex<double>;

// layout: [Re a, Im a, Re b, Im b, phi, Re B, Im B, Re G, Im G, Re C, Im C]
struct Rhs {
  const FrequencyProfile* profile;
  double E0;
  bool with_aux;

  void operator()(const state_type& y, state_type& dy, double t) const {
    const auto [w, wd] = (*profile)(t);
    const cd a(y[0], y[1]), b(y[2], y[3]);
    const double phi = y[4];
    const double g = wd / (2.0 * w);
    const cd e2 = std::polar(1.0, 2.0 * phi);
    const cd da = -g * e2 * std::conj(b);
    const cd db = -g * e2 * std::conj(a);
    dy[0] = da.real();
    dy[1] = da.imag();
    dy[2] = db.real();
    dy[3] = db.imag();
    dy[4] = w;
    if (with_aux) {
      const cd B(y[5], y[6]);
      const cd eE = std::polar(1.0, E0 * t - phi);          // e^{i(E0 t - phi)}
      const cd dB = b * eE;                                 // beta e^{i E0 t}
      const cd dG = cd(0.0, profile->omega2() - w) * b * eE  // i(w2-w) beta e^{iE0t}
                    - g * std::conj(a) * std::polar(1.0, E0 * t + phi);
      const cd dC = B * std::conj(a) * std::polar(1.0, phi - E0 * t);
      dy[5] = dB.real();
      dy[6] = dB.imag();
      dy[7] = dG.real();
      dy[8] = dG.imag();
      dy[9] = dC.real();
      dy[10] = dC.imag();
    } else {
      for (int i = 5; i < 11; ++i) dy[i] = 0.0;
    }
  }
};

void check_edge(const FrequencyProfile& profile, double t, double target, const char* edge) {
  const double w = profile(t).omega;
  if (std::abs(w - target) > 1e-8 * target) {
    std::ostringstream msg;
    msg << "integration window too short at the " << edge << " edge: omega(" << t << ") = " << w
        << " has not reached its asymptote " << target << " to 1e-8 relative";
    throw window_error(msg.str());
  }
}

}  // namespace

DemodRun integrate_demodulated(const FrequencyProfile& profile,
                               const std::array<double, 2>& window, int samples,
                               double rel_tol, double abs_tol, double E0, bool with_aux) {
  namespace odeint = boost::numeric::odeint;

  const double t0 = window[0], t1 = window[1];
  if (!(t0 < t1)) throw input_error("integrate_demodulated: empty window");
  check_edge(profile, t0, profile.omega1(), "left");
  check_edge(profile, t1, profile.omega2(), "right");

  DemodRun run;
  run.with_aux = with_aux;
  run.t.reserve(samples);
  run.a.reserve(samples);
  run.b.reserve(samples);
  run.phi.reserve(samples);
  if (with_aux) {
    run.B.reserve(samples);
    run.C.reserve(samples);
  }

  state_type y{};
  y[0] = 1.0;             // a = 1
  y[4] = profile.omega1() * t0;  // phi(t_min) = w1 t_min

  const double dt = (t1 - t0) / (samples - 1);
  const Rhs rhs{&profile, E0, with_aux};

  auto record = [&](const state_type& s, double t) {
    run.t.push_back(t);
    run.a.emplace_back(s[0], s[1]);
    run.b.emplace_back(s[2], s[3]);
    run.phi.push_back(s[4]);
    if (with_aux) {
      run.B.emplace_back(s[5], s[6]);
      run.C.emplace_back(s[9], s[10]);
    }
  };

  try {
    auto stepper =
        odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_fehlberg78<state_type>());
    record(y, t0);
    // drive the sample grid explicitly: integrate_adaptive always finishes
    // exactly at the interval end, so sample times and states stay in sync
    for (int i = 1; i < samples; ++i) {
      const double ta = t0 + (i - 1) * dt;
      const double tb = i == samples - 1 ? t1 : t0 + i * dt;
      odeint::integrate_adaptive(stepper, rhs, y, ta, tb, 0.5 * (tb - ta));
      record(y, tb);
    }
  } catch (const std::exception& e) {
    throw numerics_error(std::string("integrate_demodulated: stepper failed: ") + e.what());
  }

  run.G_end = cd(y[7], y[8]);
  run.C_end = cd(y[9], y[10]);
  return run;
}

}  // namespace qcavity::detail
