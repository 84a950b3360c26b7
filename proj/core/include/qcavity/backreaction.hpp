#pragma once

// Second-order back reaction of the atom on photon creation: the photon-number
// correction deltaN(t) and the dimensionless intensity coefficient eta(tau),
// defined through N_inf = N_dce (1 + (lambda/E0)^2 eta).

#include <complex>
#include <span>
#include <vector>

#include "qcavity/bogoliubov.hpp"
#include "qcavity/model.hpp"

namespace qcavity {

struct BackreactionResult {
  std::vector<double> times;
  std::vector<double> delta_N_samples;
  double delta_N_inf = 0.0;
  double eta = 0.0;
  /// |eta' - eta| when t_max is extended by 20%; a window-truncation error bar.
  double eta_window_sensitivity = 0.0;
  double N_dce = 0.0;
  ModelParams params;
};

/// deltaN(t) = 2 lambda^2 { |alpha|^2 |B|^2
///                          - 2 Re[ alpha beta^* int B alpha^* e^{-i E0 t'} dt' ] }
/// on the trajectory grid; the running inner integral uses the same composite
/// quadrature order as the grid.  B must live on exactly this grid.
std::vector<double> delta_N(const BogoliubovTrajectory& traj,
                            std::span<const std::complex<double>> B_samples, double E0,
                            double lambda);

/// Full pipeline: integrate -> B -> deltaN -> tail average -> eta, plus the
/// window-extension sensitivity.  tau = 0 carries no second-order correction
/// (eta -> 0 quadratically); that limit returns an exact zero.
BackreactionResult eta(const ModelParams& params, const NumericsConfig& cfg);

/// CSV export for a tau sweep, columns: tau, eta, eta_total, delta_N_inf,
/// N_dce.  eta_total additionally subtracts the absorption channel w_up from
/// the photon count (the two corrections are comparable; both are exported,
/// labeled separately).
void write_eta_sweep_csv(std::ostream& os, const ModelParams& base,
                         const std::vector<double>& taus,
                         const std::vector<BackreactionResult>& results,
                         const std::vector<double>& w_up, const NumericsConfig& cfg);

}  // namespace qcavity
