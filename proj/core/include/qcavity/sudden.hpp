#pragma once

// Closed-form instantaneous (sudden) switching: dressed states of the
// resonant-coupling model, the squeezed vacuum produced by the quench, the
// atomic excitation probability series with its weak/strong coupling limits,
// and the mean created photon number.

#include <vector>

#include "qcavity/model.hpp"

namespace qcavity {

/// Mixing coefficients of the dressed pair {|n,down>, |n-1,up>}:
///   |n,down>_d   = S_minus |n,down> - R_minus |n-1,up>
///   |n-1,up>_d   = R_plus  |n-1,up> + S_plus  |n,down>
/// Normalization R^2 + S^2 = 1 holds per branch; the two vectors are
/// orthogonal.  For n = 0 the ground state is undressed and is_ground is set
/// (the plus branch does not exist there).
struct DressedCoeffs {
  int n = 0;
  double R_plus = 0, R_minus = 0, S_plus = 0, S_minus = 0;
  double Delta = 0;   // E0 - omega
  double lambda = 0;
  bool is_ground = false;
};

/// Stable evaluation (no cancellation for small lambda, continuous across
/// Delta = 0).  Requires n >= 0 and not both Delta = 0 and lambda = 0.
DressedCoeffs dressed_coeffs(int n, double Delta, double lambda);

struct DressedEnergies {
  double E_down;  // E_{n,down}
  double E_up;    // E_{n-1,up}
};

/// E_{n,down} = w n + Delta/2 - sqrt(Delta^2/4 + lambda^2 n), E_{n-1,up} with
/// the + sign.  n >= 1.
DressedEnergies dressed_energies(int n, double omega, double E0, double lambda);

/// Squeezed vacuum produced by the instantaneous quench, expanded over even
/// Fock states: amplitudes[j] multiplies |2j>.  Odd amplitudes vanish
/// identically and are not stored.  The truncation deficit 1 - sum c^2 is
/// reported, never renormalized away.
struct SqueezedVacuum {
  double rho = 1.0;
  std::vector<double> amplitudes;
  int j_max = 0;
  double norm_deficit = 0.0;
};

SqueezedVacuum squeezed_vacuum_amplitudes(double rho, double series_tol);

/// Amplitudes of the squeezed one-photon state on |2j+1>; needed for the
/// first-order split of the excitation amplitude in the full model.
std::vector<double> squeezed_fock1_amplitudes(double rho, double series_tol);

/// Total sudden-limit excitation probability w_up(rho, xi).  Symmetric under
/// rho -> 1/rho, monotone in xi at fixed rho, bounded by the strong-coupling
/// value.  xi = +-inf is rejected (use excitation_strong_coupling).
double excitation_probability_sudden(double rho, double xi, double series_tol);

/// Weak-coupling closed form (xi << 1), including its printed fourth-order
/// correction term.
double excitation_weak_coupling(double rho, double xi);

/// Strong-coupling / resonance limit, Nbar/(2 (1 + Nbar + sqrt(Nbar+1))).
double excitation_strong_coupling(double rho);

struct MeanPhotonResult {
  double n_bar;         // N_dce - w_up
  double n_bar_direct;  // direct sum over dressed-state amplitudes
  double w_up;
  double N_dce;
};

/// Mean photons created with the atom present, plus the independent
/// amplitude-level sum for cross-validation.
MeanPhotonResult mean_photons_with_atom(double rho, double xi, double series_tol);

}  // namespace qcavity
