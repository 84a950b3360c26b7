#pragma once

// Shared integrator for the mode-function equations in demodulated variables.
//
// The raw coefficients (alpha, beta) obey
//   alpha' = -i w alpha - (w'/2w) conj(beta),
//   beta'  = -i w beta  - (w'/2w) conj(alpha),
// with alpha e^{i w1 t} -> 1, beta -> 0 at the left edge.  Substituting
// a = alpha e^{i phi}, b = beta e^{i phi} with phi(t) = w1 t_min + int w dt
// removes the fast rotation:
//   a' = -(w'/2w) e^{2i phi} conj(b),   b' = -(w'/2w) e^{2i phi} conj(a),
// so the adaptive step size is set by the switching time, not by 1/w.
//
// Alongside (a, b, phi) the system can carry three running quadratures used
// by the perturbative modules (E0 is the atomic transition frequency):
//   B(t) = int beta e^{i E0 t'} dt'
//   G(t) = int e^{i E0 t'} [ i(w2 - w) beta - (w'/2w) conj(alpha) ] dt'
//          (the non-oscillating part integrand; G(inf)/beta_inf squared is the
//           excitation efficiency)
//   C(t) = int B alpha^* e^{-i E0 t'} dt'
// Integrating them inside the same error-controlled stepper keeps their
// quadrature order consistent with the trajectory itself and refines
// automatically where beta moves fastest.

#include <array>
#include <complex>
#include <vector>

#include "qcavity/model.hpp"

namespace qcavity::detail {

struct DemodRun {
  std::vector<double> t;
  std::vector<double> phi;
  std::vector<std::complex<double>> a, b;
  std::vector<std::complex<double>> B, C;  // filled only when with_aux
  std::complex<double> G_end{0.0, 0.0};
  std::complex<double> C_end{0.0, 0.0};
  bool with_aux = false;
};

/// Integrate over [window[0], window[1]] emitting `samples` uniform samples.
/// Throws window_error when the profile has not reached its asymptotes at the
/// window edges (1e-8 relative).
DemodRun integrate_demodulated(const FrequencyProfile& profile,
                               const std::array<double, 2>& window, int samples,
                               double rel_tol, double abs_tol, double E0, bool with_aux);

}  // namespace qcavity::detail
