#pragma once

// Norm-preserving propagation in the truncated Fock x two-level basis.
//
// Scheme: adaptive exponential midpoint (second-order Magnus).  Each step
// applies exp(-i H(t_mid) h) exactly through a Chebyshev expansion of the
// matrix exponential on the banded Hamiltonian, so every step is unitary to
// series-truncation accuracy (~1e-15) regardless of step size; the step
// controller only has to track the commutator error from the time dependence
// of H.  Error control is step doubling: the half-step solution is kept and
// the controller works on ||psi_h - psi_{h/2,h/2}||.
//
// Basis index: idx(n, s) = 2n + s with s = 0 (down), 1 (up), n = 0..n_max.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qcavity/model.hpp"

namespace qcavity::detail {

enum class Coupling { full, rotating_wave };

/// Matrix-free action of H(t); the time enters through (omega, omega_dot).
class HamAction {
 public:
  HamAction(int n_max, double E0, double lambda, Coupling mode);

  /// Refresh the time-dependent pieces.
  void set_frequency(double omega, double omega_dot);

  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;

  /// Gershgorin bounds on the spectrum.
  void bounds(double& emin, double& emax) const;

  int dim() const { return 2 * (n_max_ + 1); }
  int n_max() const { return n_max_; }

 private:
  int n_max_;
  double E0_, lambda_;
  Coupling mode_;
  double omega_ = 1.0, squeeze_ = 0.0;  // squeeze_ = omega_dot / (4 omega)
  std::vector<double> sqn_;             // sqrt(n)
  std::vector<double> sq2_;             // sqrt((n+1)(n+2))
};

/// J_0..J_K of the first kind by Miller's downward recurrence.
std::vector<double> bessel_j_array(double z, int K);

/// psi <- exp(-i H dt) psi, Chebyshev series with Gershgorin scaling.
/// Unitary up to the 1e-16 coefficient cutoff.
void expm_apply(const HamAction& H, double dt, Eigen::VectorXcd& psi);

struct PropagationStats {
  long accepted = 0;
  long rejected = 0;
};

/// Advance psi from t0 to t1 with the adaptive midpoint scheme; h is the
/// controller state carried across calls.  tol is the per-step error bound.
void propagate(HamAction& H, const FrequencyProfile& profile, double t0, double t1, double tol,
               double& h, Eigen::VectorXcd& psi, PropagationStats& stats);

}  // namespace qcavity::detail
