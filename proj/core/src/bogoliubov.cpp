#include "qcavity/bogoliubov.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "csv.hpp"
#include "demod_ode.hpp"

namespace qcavity {

namespace {

using cd = std::complex<double>;

BogoliubovTrajectory sudden_trajectory(const FrequencyProfile& profile, NumericsConfig cfg) {
  const bool defaulted = !cfg.window.has_value();
  const auto window = cfg.window_for(profile);
  const int n = cfg.samples_for(window);
  cfg.window = window;
  cfg.sample_count = n;

  const double theta = 0.5 * std::log(profile.omega2() / profile.omega1());
  const double ch = std::cosh(theta), sh = std::sinh(theta);

  BogoliubovTrajectory traj;
  traj.profile = profile;
  traj.numerics = cfg;
  traj.default_window = defaulted;
  traj.times.resize(n);
  traj.alpha.resize(n);
  traj.beta.resize(n);
  traj.phase.resize(n);
  traj.demod_alpha.resize(n);
  traj.demod_beta.resize(n);
  const double dt = (window[1] - window[0]) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double t = window[0] + i * dt;
    traj.times[i] = t;
    if (t < 0) {
      traj.phase[i] = profile.omega1() * t;
      traj.demod_alpha[i] = 1.0;
      traj.demod_beta[i] = 0.0;
    } else {
      // matching across the jump: the delta spike in w'/2w integrates to the
      // squeeze parameter theta
      traj.phase[i] = profile.omega2() * t;
      traj.demod_alpha[i] = ch;
      traj.demod_beta[i] = -sh;
    }
    const cd rot = std::polar(1.0, -traj.phase[i]);
    traj.alpha[i] = traj.demod_alpha[i] * rot;
    traj.beta[i] = traj.demod_beta[i] * rot;
  }
  traj.alpha_inf = ch;
  traj.beta_inf = -sh;
  return traj;
}

}  // namespace

BogoliubovTrajectory integrate_bogoliubov(const FrequencyProfile& profile,
                                          const NumericsConfig& cfg_in) {
  cfg_in.validate();
  if (profile.kind() == ProfileKind::sudden) return sudden_trajectory(profile, cfg_in);

  NumericsConfig cfg = cfg_in;
  const bool defaulted = !cfg.window.has_value();
  const auto window = cfg.window_for(profile);
  const int n = cfg.samples_for(window);
  cfg.window = window;
  cfg.sample_count = n;

  const auto run = detail::integrate_demodulated(profile, window, n, cfg.ode_rel_tol,
                                                 cfg.ode_abs_tol, 0.0, false);

  BogoliubovTrajectory traj;
  traj.profile = profile;
  traj.numerics = cfg;
  traj.default_window = defaulted;
  traj.times = run.t;
  traj.phase = run.phi;
  traj.demod_alpha = run.a;
  traj.demod_beta = run.b;
  const std::size_t m = run.t.size();
  traj.alpha.resize(m);
  traj.beta.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const cd rot = std::polar(1.0, -run.phi[i]);
    traj.alpha[i] = run.a[i] * rot;
    traj.beta[i] = run.b[i] * rot;
  }
  auto [ainf, binf] = extract_asymptotics(traj);
  traj.alpha_inf = ainf;
  traj.beta_inf = binf;
  return traj;
}

std::pair<cd, cd> extract_asymptotics(const BogoliubovTrajectory& traj) {
  const double t_max = traj.t_max();
  const double w2 = traj.profile.omega2();
  const double tail_start = 0.9 * t_max;

  cd mean_a = 0.0, mean_b = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] < tail_start) continue;
    const cd rot = std::polar(1.0, w2 * traj.times[i]);
    mean_a += traj.alpha[i] * rot;
    mean_b += traj.beta[i] * rot;
    ++count;
  }
  if (count < 8)
    throw window_error("extract_asymptotics: fewer than 8 samples in the demodulation tail");
  mean_a /= static_cast<double>(count);
  mean_b /= static_cast<double>(count);

  // flatness: asymptotic form reached over the whole tail
  double dev = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] < tail_start) continue;
    const cd rot = std::polar(1.0, w2 * traj.times[i]);
    dev = std::max(dev, std::abs(traj.alpha[i] * rot - mean_a));
    dev = std::max(dev, std::abs(traj.beta[i] * rot - mean_b));
  }
  if (dev > 1e-6) {
    std::ostringstream msg;
    msg << "extract_asymptotics: demodulated tail not flat at the right edge "
        << "(max deviation " << dev << " > 1e-6); extend t_max";
    throw window_error(msg.str());
  }
  return {mean_a, mean_b};
}

double dce_photon_number(cd beta_inf) { return std::norm(beta_inf); }

void write_trajectory_csv(std::ostream& os, const BogoliubovTrajectory& traj) {
  detail::MetaWriter meta(os);
  meta.kv("content", "bogoliubov trajectory");
  meta.kv("omega1", traj.profile.omega1());
  meta.kv("omega2", traj.profile.omega2());
  meta.kv("tau", traj.profile.tau());
  meta.numerics(traj.numerics, {traj.t_min(), traj.t_max()},
                static_cast<int>(traj.times.size()), traj.default_window);
  meta.kv("alpha_inf", detail::fmt(traj.alpha_inf.real()) + " + " +
                           detail::fmt(traj.alpha_inf.imag()) + "i");
  meta.kv("beta_inf", detail::fmt(traj.beta_inf.real()) + " + " +
                          detail::fmt(traj.beta_inf.imag()) + "i");
  os << "t,re_alpha,im_alpha,re_beta,im_beta,beta_sq\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << detail::fmt(traj.times[i]) << ',' << detail::fmt(traj.alpha[i].real()) << ','
       << detail::fmt(traj.alpha[i].imag()) << ',' << detail::fmt(traj.beta[i].real()) << ','
       << detail::fmt(traj.beta[i].imag()) << ',' << detail::fmt(std::norm(traj.beta[i]))
       << '\n';
  }
}

}  // namespace qcavity
