#pragma once

// Mode functions of the parametrically driven cavity mode: the coupled
// equations for the coefficients (alpha, beta), their asymptotic constants,
// and the photon number created from vacuum.

#include <complex>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qcavity/model.hpp"

namespace qcavity {

/// Time-sampled pair (alpha, beta) plus extracted asymptotics.
///
/// Invariants (checked by the test suite):
///   |alpha|^2 - |beta|^2 = 1 at every sample,
///   beta(t_min) = 0 and alpha(t_min) e^{i omega1 t_min} = 1,
///   alpha(t) e^{i omega2 t} settles to alpha_inf at the right edge (1e-6).
struct BogoliubovTrajectory {
  std::vector<double> times;
  std::vector<std::complex<double>> alpha, beta;
  /// Accumulated phase int omega dt (demodulation convention; fixes the
  /// otherwise-free global phase of alpha_inf, beta_inf).
  std::vector<double> phase;
  /// Demodulated values a = alpha e^{i phase}, b = beta e^{i phase}.
  std::vector<std::complex<double>> demod_alpha, demod_beta;
  std::complex<double> alpha_inf{1.0, 0.0}, beta_inf{0.0, 0.0};
  FrequencyProfile profile;
  /// Config actually used (window and sample_count resolved).
  NumericsConfig numerics;
  /// Whether the window came from the default policy rather than the caller.
  bool default_window = false;

  double t_min() const { return times.front(); }
  double t_max() const { return times.back(); }
};

/// Integrate the mode-function equations over the configured window.
/// The sudden kind is handled in closed form.  Throws window_error when the
/// window does not reach the asymptotic regime on either edge.
BogoliubovTrajectory integrate_bogoliubov(const FrequencyProfile& profile,
                                          const NumericsConfig& cfg);

/// (alpha_inf, beta_inf) from the demodulated tail (mean over the last 10% of
/// the t > 0 samples), with a flatness check at 1e-6 absolute.
std::pair<std::complex<double>, std::complex<double>> extract_asymptotics(
    const BogoliubovTrajectory& traj);

/// Photons created from vacuum: |beta_inf|^2.
double dce_photon_number(std::complex<double> beta_inf);

/// CSV export, columns: t, re_alpha, im_alpha, re_beta, im_beta, beta_sq.
void write_trajectory_csv(std::ostream& os, const BogoliubovTrajectory& traj);

}  // namespace qcavity
