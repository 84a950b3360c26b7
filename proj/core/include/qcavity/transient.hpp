#pragma once

// First-order excitation of the atom at finite switching time: the amplitude
// integral B(t) = int beta e^{i E0 t'} dt', the excitation efficiency F(tau),
// and the excitation probability w_up = (lambda/Delta2)^2 |beta_inf|^2 F.

#include <complex>
#include <vector>

#include "qcavity/bogoliubov.hpp"
#include "qcavity/model.hpp"

namespace qcavity {

struct TransientResult {
  std::vector<double> times;
  std::vector<std::complex<double>> B_samples;
  double F = 1.0;
  double w_up = 0.0;
  double delta2 = 0.0;  // E0 - omega2
  double N_dce = 0.0;   // |beta_inf|^2
  /// Long-time split B(t) ~ B_const + B_osc e^{i Delta2 t}; the oscillating
  /// part carries no transition probability and B_const alone enters w_up.
  std::complex<double> B_const{0.0, 0.0}, B_osc{0.0, 0.0};
  /// Estimated truncation of the improper efficiency integral (absolute on F);
  /// the integrand decays like e^{-t/tau} past the switching region.
  double tail_error = 0.0;
  /// max over the grid of lambda |B(t)|; first-order validity needs << 1.
  double first_order_parameter = 0.0;
};

/// B(t) on the trajectory grid.  The quadrature runs inside the same
/// error-controlled integrator that produced the trajectory, so its order and
/// refinement match the trajectory itself.
std::vector<std::complex<double>> compute_B(const BogoliubovTrajectory& traj, double E0);

/// Efficiency F = |int e^{i Delta2 t} d/dt[(beta/beta_inf) e^{i omega2 t}]|^2
/// with the derivative taken from the equations of motion, never by
/// differencing samples.  F(0) = 1; errors: |beta_inf| < 1e-12 (baseline
/// undefined, adiabatic regime) and Delta2 = 0 (resonance unsupported).
double excitation_efficiency_F(const BogoliubovTrajectory& traj, double E0);

/// Full first-order result; params must match the trajectory's profile.
TransientResult excitation_probability_transient(const BogoliubovTrajectory& traj,
                                                 const ModelParams& params);

/// CSV export for a switching-time sweep, columns: tau, F, w_up, N_dce.
void write_transient_sweep_csv(std::ostream& os, const ModelParams& base,
                               const std::vector<double>& taus,
                               const std::vector<TransientResult>& results,
                               const NumericsConfig& cfg);

}  // namespace qcavity
