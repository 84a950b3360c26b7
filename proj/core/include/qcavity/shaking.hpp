#pragma once

// The full-model (counter-rotating terms kept) first-order dressed states,
// the ground-state Lamb shift E_L = -lambda^2/(omega + E0), and the "shaking"
// excitation channel driven by sudden modulation of that shift.  The shaking
// channel exists independently of photon creation: zeroing the squeeze
// operator kills the Casimir amplitude but leaves the shaking amplitude
// untouched.

#include <complex>
#include <utility>

#include "qcavity/model.hpp"

namespace qcavity {

struct LambShiftReport {
  double E_L_initial = 0.0;  // at omega1
  double E_L_final = 0.0;    // at omega2
  double delta_E_L = 0.0;
  double w_shake = 0.0;      // = (delta_E_L / lambda)^2
  double lambda = 0.0;
};

/// Ground-state Lamb shift -lambda^2/(omega + E0); negative for all valid
/// inputs and increasing toward zero with omega.
double lamb_shift(double omega, double E0, double lambda);

/// Shaking excitation probability for an instantaneous switch
/// w = lambda^2 (1/(omega2+E0) - 1/(omega1+E0))^2, reported together with
/// both Lamb shifts.  Valid in the instantaneous regime tau << 1/E0 (not
/// enforced).
LambShiftReport shaking_probability(const ModelParams& params);

/// First-order corrections to |n,down> and |n,up> and the second-order
/// energies, including the n-proportional dressing of the mode frequency
/// (reported only; not fed back into other modules).
struct FirstOrderDressed {
  int n = 0;
  double omega = 0, E0 = 0, lambda = 0;
  // |n,down>_d = |n,down> + down_minus |n-1,up> + down_plus |n+1,up>
  double down_minus = 0, down_plus = 0;
  // |n,up>_d = |n,up> + up_minus |n-1,down> + up_plus |n+1,down>
  double up_minus = 0, up_plus = 0;
  double energy_down = 0, energy_up = 0;
};

/// Throws input_error within 1e-6 E0 of resonance omega = E0 where the
/// perturbative expansion breaks down.
FirstOrderDressed dressed_states_first_order(int n, double omega, double E0, double lambda);

/// Split of the excitation amplitude into the shaking part (squeeze operator
/// bypassed; nonzero at first order only for n = 1) and the Casimir part.
/// with_dce = false forces the squeeze operator to the identity: the Casimir
/// part vanishes and the shaking part is bit-identical.
std::pair<std::complex<double>, std::complex<double>> amplitude_split(
    int n, const ModelParams& params, bool with_dce = true, double series_tol = 1e-14);

/// Flat-text export of the report.
void write_shaking_report(std::ostream& os, const ModelParams& params,
                          const LambShiftReport& report);

}  // namespace qcavity
