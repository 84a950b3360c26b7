#pragma once

// Physics parameters, the time-dependent mode frequency profile, and the
// numerical controls shared by every solver in the library.  Units: hbar = 1,
// every parameter is a frequency (inverse time).

#include <array>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "qcavity/errors.hpp"

namespace qcavity {

/// Scalar inputs of the model: a two-level atom with transition frequency E0
/// coupled (strength lambda) to a single cavity mode whose frequency switches
/// from omega1 to omega2 over a characteristic time tau.
struct ModelParams {
  double E0 = 0.8;
  double omega1 = 0.5;
  double omega2 = 5.0;
  double lambda = 0.05;
  double tau = 1.0;

  /// Frequency ratio rho = omega2/omega1.
  double rho() const { return omega2 / omega1; }
  /// Detuning Delta = E0 - omega2.  The out-frequency convention: dressed
  /// out-states are built at omega2, and the long-time amplitudes oscillate
  /// at exactly this frequency.
  double detuning() const { return E0 - omega2; }
  /// Dimensionless coupling xi = lambda/Delta (infinite at resonance).
  double xi() const {
    const double d = detuning();
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    return lambda / d;
  }
  /// Squeeze parameter Theta = (1/2) ln(rho) of the instantaneous quench.
  double theta() const;

  /// Throws input_error if any value is out of range.
  void validate() const;
};

struct FrequencyValue {
  double omega;
  double omega_dot;
};

enum class ProfileKind { smooth, sudden, custom };

/// The mode frequency omega(t) with its analytic derivative.
///
/// kinds:
///   smooth  - omega(t) = (w1 + w2 e^{t/tau}) / (1 + e^{t/tau}); evaluation is
///             overflow-safe for |t/tau| up to 1e3 and beyond (two-branch
///             sigmoid).
///   sudden  - step w1 -> w2 at t = 0 (omega_dot reported as 0; the jump is
///             handled analytically by consumers).
///   custom  - natural cubic spline through user-supplied (t, omega) knots,
///             clamped to the endpoint values outside the table.
class FrequencyProfile {
 public:
  /// Constant unit-frequency placeholder; use the factories for real profiles.
  FrequencyProfile() : omega1_(1.0), omega2_(1.0), tau_(1.0) {}

  static FrequencyProfile smooth(double omega1, double omega2, double tau);
  static FrequencyProfile sudden_jump(double omega1, double omega2);
  static FrequencyProfile tabulated(std::vector<double> t, std::vector<double> omega);

  FrequencyValue operator()(double t) const;

  ProfileKind kind() const { return kind_; }
  double omega1() const { return omega1_; }
  double omega2() const { return omega2_; }
  /// Switching time; meaningful for the smooth kind only.
  double tau() const { return tau_; }

  /// Interval outside which omega_dot is negligible.  Steppers must not cross
  /// this region with steps longer than switching_timescale(), or they can
  /// miss the squeeze spike entirely.  Empty ({0,0}) for constant profiles.
  std::array<double, 2> switching_window() const;
  /// Shortest timescale of the frequency variation (infinity when constant).
  double switching_timescale() const;

 private:
  ProfileKind kind_ = ProfileKind::smooth;
  double omega1_ = 0, omega2_ = 0, tau_ = 0;
  // custom kind: spline knots and second derivatives
  std::vector<double> knot_t_, knot_w_, knot_m_;
};

/// eval_frequency(profile, t) -> (omega, omega_dot).  Throws input_error on
/// non-finite t.
FrequencyValue eval_frequency(const FrequencyProfile& profile, double t);

/// Profile implied by the parameter set: smooth for tau > 0, sudden for tau = 0.
FrequencyProfile profile_for(const ModelParams& p);

/// Numerical controls.  All solvers are pure functions of (inputs, config).
struct NumericsConfig {
  /// Integration window [t_min, t_max]; when unset a per-profile default is
  /// derived, see window_for().
  std::optional<std::array<double, 2>> window;
  double ode_rel_tol = 1e-12;
  double ode_abs_tol = 1e-14;
  /// Relative truncation threshold for infinite series.
  double series_tol = 1e-14;
  /// Fock truncation for the exact-evolution oracle.
  int fock_max = 64;
  /// Output grid resolution; 0 = automatic (dense enough for tail analysis).
  int sample_count = 0;
  /// Acceptable population of the two topmost Fock levels in the oracle.
  double truncation_tol = 1e-6;

  void validate() const;

  /// Resolved window for a profile.  Default policy:
  /// [-max(25 tau, 40/omega1), +max(25 tau, 40/omega2)] so that the profile
  /// reaches its asymptotes to better than 1e-8 relative at both edges and the
  /// demodulated trajectory tail is flat to 1e-6.  For the custom kind the
  /// knot span is used.  The window is a numerical choice, not a physics
  /// input; exported files record it in their metadata header.
  std::array<double, 2> window_for(const FrequencyProfile& profile) const;

  /// Resolved sample count for a window (spacing <= 0.04 time units when
  /// sample_count == 0).
  int samples_for(const std::array<double, 2>& window) const;
};

}  // namespace qcavity
