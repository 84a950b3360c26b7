#include "qcavity/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcavity {

namespace {

bool finite(double x) { return std::isfinite(x); }

// logistic sigmoid and its derivative, safe for |x| up to ~1e308
double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}
double sigmoid_prime(double x) {
  const double e = std::exp(-std::abs(x));
  const double d = 1.0 + e;
  return e / (d * d);
}

}  // namespace

double ModelParams::theta() const { return 0.5 * std::log(rho()); }

void ModelParams::validate() const {
  std::ostringstream bad;
  if (!finite(E0) || E0 <= 0) bad << "E0 must be positive and finite (got " << E0 << "); ";
  if (!finite(omega1) || omega1 <= 0) bad << "omega1 must be positive (got " << omega1 << "); ";
  if (!finite(omega2) || omega2 <= 0) bad << "omega2 must be positive (got " << omega2 << "); ";
  if (!finite(lambda) || lambda < 0) bad << "lambda must be >= 0 (got " << lambda << "); ";
  if (!finite(tau) || tau < 0) bad << "tau must be >= 0 (got " << tau << "); ";
  const std::string msg = bad.str();
  if (!msg.empty()) throw input_error("ModelParams: " + msg);
}

FrequencyProfile FrequencyProfile::smooth(double omega1, double omega2, double tau) {
  if (!(omega1 > 0) || !(omega2 > 0))
    throw input_error("FrequencyProfile::smooth: frequencies must be positive");
  if (!(tau > 0))
    throw input_error(
        "FrequencyProfile::smooth: tau must be > 0; for an instantaneous "
        "switch use the sudden kind");
  FrequencyProfile p;
  p.kind_ = ProfileKind::smooth;
  p.omega1_ = omega1;
  p.omega2_ = omega2;
  p.tau_ = tau;
  return p;
}

FrequencyProfile FrequencyProfile::sudden_jump(double omega1, double omega2) {
  if (!(omega1 > 0) || !(omega2 > 0))
    throw input_error("FrequencyProfile::sudden_jump: frequencies must be positive");
  FrequencyProfile p;
  p.kind_ = ProfileKind::sudden;
  p.omega1_ = omega1;
  p.omega2_ = omega2;
  p.tau_ = 0.0;
  return p;
}

FrequencyProfile FrequencyProfile::tabulated(std::vector<double> t, std::vector<double> omega) {
  if (t.size() != omega.size() || t.size() < 2)
    throw input_error("FrequencyProfile::tabulated: need >= 2 matching (t, omega) knots");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i] < t[i + 1]))
      throw input_error("FrequencyProfile::tabulated: knot times must be strictly increasing");
  for (double w : omega)
    if (!(w > 0) || !finite(w))
      throw input_error("FrequencyProfile::tabulated: omega must be positive at every knot");

  FrequencyProfile p;
  p.kind_ = ProfileKind::custom;
  p.omega1_ = omega.front();
  p.omega2_ = omega.back();
  p.tau_ = 0.0;

  // natural cubic spline second derivatives (tridiagonal solve)
  const std::size_t n = t.size();
  std::vector<double> m(n, 0.0), u(n, 0.0), z(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    const double alpha =
        3.0 * ((omega[i + 1] - omega[i]) / h1 - (omega[i] - omega[i - 1]) / h0);
    const double l = 2.0 * (t[i + 1] - t[i - 1]) - h0 * u[i - 1];
    u[i] = h1 / l;
    z[i] = (alpha - h0 * z[i - 1]) / l;
  }
  for (std::size_t i = n - 1; i-- > 1;) m[i] = z[i] - u[i] * m[i + 1];

  p.knot_t_ = std::move(t);
  p.knot_w_ = std::move(omega);
  p.knot_m_ = std::move(m);
  return p;
}

FrequencyValue FrequencyProfile::operator()(double t) const {
  if (!finite(t)) throw input_error("FrequencyProfile: non-finite evaluation time");
  switch (kind_) {
    case ProfileKind::smooth: {
      const double x = t / tau_;
      const double w = omega1_ + (omega2_ - omega1_) * sigmoid(x);
      const double wd = (omega2_ - omega1_) / tau_ * sigmoid_prime(x);
      return {w, wd};
    }
    case ProfileKind::sudden:
      return {t < 0 ? omega1_ : omega2_, 0.0};
    case ProfileKind::custom: {
      const auto& ts = knot_t_;
      if (t <= ts.front()) return {knot_w_.front(), 0.0};
      if (t >= ts.back()) return {knot_w_.back(), 0.0};
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
      const double h = ts[i + 1] - ts[i];
      const double A = (ts[i + 1] - t) / h;
      const double B = (t - ts[i]) / h;
      const double w = A * knot_w_[i] + B * knot_w_[i + 1] +
                       ((A * A * A - A) * knot_m_[i] + (B * B * B - B) * knot_m_[i + 1]) *
                           (h * h) / 6.0;
      const double wd = (knot_w_[i + 1] - knot_w_[i]) / h +
                        (-(3.0 * A * A - 1.0) * knot_m_[i] + (3.0 * B * B - 1.0) * knot_m_[i + 1]) *
                            h / 6.0;
      if (!(w > 0)) throw numerics_error("FrequencyProfile: spline produced omega <= 0");
      return {w, wd};
    }
  }
  throw input_error("FrequencyProfile: invalid kind");
}

std::array<double, 2> FrequencyProfile::switching_window() const {
  switch (kind_) {
    case ProfileKind::smooth:
      if (omega1_ == omega2_) return {0.0, 0.0};
      return {-50.0 * tau_, 50.0 * tau_};
    case ProfileKind::sudden:
      return {0.0, 0.0};
    case ProfileKind::custom:
      return {knot_t_.front(), knot_t_.back()};
  }
  return {0.0, 0.0};
}

double FrequencyProfile::switching_timescale() const {
  switch (kind_) {
    case ProfileKind::smooth:
      return omega1_ == omega2_ ? std::numeric_limits<double>::infinity() : tau_;
    case ProfileKind::sudden:
      return 0.0;
    case ProfileKind::custom: {
      double h = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < knot_t_.size(); ++i)
        h = std::min(h, knot_t_[i + 1] - knot_t_[i]);
      return 4.0 * h;
    }
  }
  return std::numeric_limits<double>::infinity();
}

FrequencyValue eval_frequency(const FrequencyProfile& profile, double t) { return profile(t); }

FrequencyProfile profile_for(const ModelParams& p) {
  p.validate();
  if (p.tau > 0) return FrequencyProfile::smooth(p.omega1, p.omega2, p.tau);
  return FrequencyProfile::sudden_jump(p.omega1, p.omega2);
}

void NumericsConfig::validate() const {
  if (window) {
    const auto& w = *window;
    if (!(w[0] < 0.0) || !(0.0 < w[1]))
      throw input_error("NumericsConfig: window must satisfy t_min < 0 < t_max");
  }
  if (!(ode_rel_tol > 0) || !(ode_abs_tol > 0) || !(series_tol > 0) || !(truncation_tol > 0))
    throw input_error("NumericsConfig: tolerances must be positive");
  if (fock_max < 2) throw input_error("NumericsConfig: fock_max must be >= 2");
  if (sample_count != 0 && sample_count < 16)
    throw input_error("NumericsConfig: sample_count must be 0 (auto) or >= 16");
}

std::array<double, 2> NumericsConfig::window_for(const FrequencyProfile& profile) const {
  validate();
  if (window) return *window;
  if (profile.kind() == ProfileKind::custom)
    throw input_error(
        "NumericsConfig: custom profiles need an explicit window covering the knot span");
  const double tau = profile.tau();
  const double left = std::max(25.0 * tau, 40.0 / profile.omega1());
  const double right = std::max(25.0 * tau, 40.0 / profile.omega2());
  return {-left, right};
}

int NumericsConfig::samples_for(const std::array<double, 2>& w) const {
  if (sample_count != 0) return sample_count;
  const double span = w[1] - w[0];
  const int n = static_cast<int>(std::ceil(span / 0.04)) + 1;
  return std::max(2001, n);
}

}  // namespace qcavity
