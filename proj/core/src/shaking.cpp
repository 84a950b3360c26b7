#include "qcavity/shaking.hpp"

#include <cmath>
#include <ostream>

#include "csv.hpp"
#include "qcavity/sudden.hpp"

namespace qcavity {

namespace {
using cd = std::complex<double>;

void check_resonance(double omega, double E0, const char* who) {
  if (std::abs(omega - E0) < 1e-6 * E0)
    throw input_error(std::string(who) +
                      ": omega within 1e-6 E0 of resonance, first-order "
                      "perturbation theory invalid");
}
}  // namespace

double lamb_shift(double omega, double E0, double lambda) {
  if (!(omega + E0 > 0)) throw input_error("lamb_shift: omega + E0 must be positive");
  return -lambda * lambda / (omega + E0);
}

LambShiftReport shaking_probability(const ModelParams& params) {
  params.validate();
  LambShiftReport r;
  r.lambda = params.lambda;
  r.E_L_initial = lamb_shift(params.omega1, params.E0, params.lambda);
  r.E_L_final = lamb_shift(params.omega2, params.E0, params.lambda);
  r.delta_E_L = r.E_L_final - r.E_L_initial;
  const double d = 1.0 / (params.omega2 + params.E0) - 1.0 / (params.omega1 + params.E0);
  r.w_shake = params.lambda * params.lambda * d * d;
  return r;
}

FirstOrderDressed dressed_states_first_order(int n, double omega, double E0, double lambda) {
  if (n < 0) throw input_error("dressed_states_first_order: n must be >= 0");
  if (!(omega > 0) || !(E0 > 0)) throw input_error("dressed_states_first_order: bad frequencies");
  check_resonance(omega, E0, "dressed_states_first_order");

  FirstOrderDressed d;
  d.n = n;
  d.omega = omega;
  d.E0 = E0;
  d.lambda = lambda;
  const double sn = std::sqrt(static_cast<double>(n));
  const double sn1 = std::sqrt(static_cast<double>(n + 1));
  d.down_minus = lambda * sn / (omega - E0);
  d.down_plus = -lambda * sn1 / (omega + E0);
  d.up_minus = lambda * sn / (omega + E0);
  d.up_plus = -lambda * sn1 / (omega - E0);

  const double l2 = lambda * lambda;
  const double renorm = 2.0 * l2 * E0 / (omega * omega - E0 * E0);
  d.energy_down = (omega + renorm) * n - l2 / (omega + E0);
  d.energy_up = (omega - renorm) * n + E0 - l2 / (omega - E0);
  return d;
}

std::pair<cd, cd> amplitude_split(int n, const ModelParams& params, bool with_dce,
                                  double series_tol) {
  params.validate();
  if (n < 0) throw input_error("amplitude_split: n must be >= 0");
  check_resonance(params.omega2, params.E0, "amplitude_split");

  const double lambda = params.lambda;
  const double E0 = params.E0;
  const double A_L =
      (n == 1) ? lambda * (1.0 / (params.omega2 + E0) - 1.0 / (params.omega1 + E0)) : 0.0;

  if (n % 2 == 0) return {cd(0.0, 0.0), cd(0.0, 0.0)};  // parity: odd n only

  // matrix elements of the squeeze on |0> (even Fock) and |1> (odd Fock)
  SqueezedVacuum sv;
  std::vector<double> dv;
  if (with_dce) {
    sv = squeezed_vacuum_amplitudes(params.rho(), series_tol);
    dv = squeezed_fock1_amplitudes(params.rho(), series_tol);
  }
  auto c_of = [&](int m) -> double {  // <m|S|0>, m even
    if (!with_dce) return m == 0 ? 1.0 : 0.0;
    const int j = m / 2;
    return j <= sv.j_max ? sv.amplitudes[j] : 0.0;
  };
  auto d_of = [&](int m) -> double {  // <m|S|1>, m odd
    if (!with_dce) return m == 1 ? 1.0 : 0.0;
    const int j = (m - 1) / 2;
    return j < static_cast<int>(dv.size()) ? dv[j] : 0.0;
  };

  const double sn = std::sqrt(static_cast<double>(n));
  const double sn1 = std::sqrt(static_cast<double>(n + 1));
  const double A = lambda * (sn * c_of(n - 1) / (params.omega2 + E0) -
                             sn1 * c_of(n + 1) / (params.omega2 - E0) -
                             d_of(n) / (params.omega1 + E0));
  return {cd(A_L, 0.0), cd(A - A_L, 0.0)};
}

void write_shaking_report(std::ostream& os, const ModelParams& params,
                          const LambShiftReport& report) {
  detail::MetaWriter meta(os);
  meta.kv("content", "ground-state Lamb shifts and shaking excitation");
  meta.params(params);
  os << "E_L_initial,E_L_final,delta_E_L,w_shake,lambda\n";
  os << detail::fmt(report.E_L_initial) << ',' << detail::fmt(report.E_L_final) << ','
     << detail::fmt(report.delta_E_L) << ',' << detail::fmt(report.w_shake) << ','
     << detail::fmt(report.lambda) << '\n';
}

}  // namespace qcavity
