#include "qcavity/sudden.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qcavity {

namespace {

constexpr double kLn4 = 1.3862943611198906;
constexpr int kMaxTerms = 500000;

// (2j-1)!!/(2^j j!) = binom(2j,j)/4^j, via log-gamma (overflow-safe past j~80)
double even_weight(int j) {
  return std::exp(std::lgamma(2.0 * j + 1.0) - 2.0 * std::lgamma(j + 1.0) - j * kLn4);
}
// (2j+1)!!/(2^j j!)
double odd_weight(int j) {
  return std::exp(std::lgamma(2.0 * j + 2.0) - 2.0 * std::lgamma(j + 1.0) - j * kLn4);
}

double qratio(double rho) { return (rho - 1.0) / (rho + 1.0); }

}  // namespace

DressedCoeffs dressed_coeffs(int n, double Delta, double lambda) {
  if (n < 0) throw input_error("dressed_coeffs: n must be >= 0");
  if (!std::isfinite(Delta) || !std::isfinite(lambda))
    throw input_error("dressed_coeffs: non-finite input");

  DressedCoeffs c;
  c.n = n;
  c.Delta = Delta;
  c.lambda = lambda;
  if (n == 0) {
    // |0,down> is the exact ground state; no partner |-1,up> exists
    c.is_ground = true;
    c.S_minus = 1.0;
    c.R_minus = 0.0;
    return c;
  }
  const double l2n = lambda * lambda * n;
  if (Delta == 0.0 && l2n == 0.0)
    throw input_error("dressed_coeffs: Delta and lambda cannot both vanish");

  if (l2n == 0.0) {  // bare limit, resolved by the sign of the detuning
    if (Delta > 0) {
      c.R_plus = 1.0;
      c.S_minus = 1.0;
    } else {
      c.S_plus = 1.0;
      c.R_minus = 1.0;
    }
    return c;
  }

  const double h = 0.5 * Delta;
  const double root = std::sqrt(h * h + l2n);
  // r_{+-} = root +- h; evaluate the cancelling branch as l2n/(root + |h|)
  const double r_big = root + std::abs(h);
  const double r_small = l2n / r_big;
  const double r_plus = h >= 0 ? r_big : r_small;
  const double r_minus = h >= 0 ? r_small : r_big;
  const double D_plus = std::sqrt(r_plus * r_plus + l2n);
  const double D_minus = std::sqrt(r_minus * r_minus + l2n);
  const double ln = lambda * std::sqrt(static_cast<double>(n));
  c.R_plus = r_plus / D_plus;
  c.S_plus = ln / D_plus;
  c.R_minus = r_minus / D_minus;
  c.S_minus = ln / D_minus;
  return c;
}

DressedEnergies dressed_energies(int n, double omega, double E0, double lambda) {
  if (n < 1) throw input_error("dressed_energies: n must be >= 1");
  const double Delta = E0 - omega;
  const double root = std::sqrt(0.25 * Delta * Delta + lambda * lambda * n);
  return {omega * n + 0.5 * Delta - root, omega * n + 0.5 * Delta + root};
}

SqueezedVacuum squeezed_vacuum_amplitudes(double rho, double series_tol) {
  if (!(rho > 0)) throw input_error("squeezed_vacuum_amplitudes: rho must be positive");
  if (!(series_tol > 0)) throw input_error("squeezed_vacuum_amplitudes: series_tol must be > 0");

  SqueezedVacuum sv;
  sv.rho = rho;
  const double q = qratio(rho);
  const double q2 = q * q;
  const double pref = std::sqrt(2.0 * std::sqrt(rho) / (1.0 + rho));

  double sum_sq = 0.0;
  double qpow = 1.0;  // (-q)^j accumulated with sign
  for (int j = 0; j < kMaxTerms; ++j) {
    const double c = pref * qpow * std::sqrt(even_weight(j));
    sv.amplitudes.push_back(c);
    sum_sq += c * c;
    qpow *= -q;
    if (j >= 1) {
      const double r = std::min(q2 * (1.0 + 0.5 / j), 0.999999999999);
      const double tail = c * c * r / (1.0 - r);
      if (tail < series_tol) break;
    } else if (q2 == 0.0) {
      break;
    }
  }
  sv.j_max = static_cast<int>(sv.amplitudes.size()) - 1;
  sv.norm_deficit = 1.0 - sum_sq;
  return sv;
}

std::vector<double> squeezed_fock1_amplitudes(double rho, double series_tol) {
  if (!(rho > 0)) throw input_error("squeezed_fock1_amplitudes: rho must be positive");
  const double q = qratio(rho);
  const double q2 = q * q;
  const double sech = 2.0 * std::sqrt(rho) / (1.0 + rho);
  const double pref = sech * std::sqrt(sech);

  std::vector<double> d;
  double qpow = 1.0;
  for (int j = 0; j < kMaxTerms; ++j) {
    const double a = pref * qpow * std::sqrt((2.0 * j + 1.0) * even_weight(j));
    d.push_back(a);
    qpow *= -q;
    if (j >= 1) {
      const double r = std::min(q2 * (1.0 + 1.5 / j), 0.999999999999);
      if (a * a * r / (1.0 - r) < series_tol) break;
    } else if (q2 == 0.0) {
      break;
    }
  }
  return d;
}

double excitation_probability_sudden(double rho, double xi, double series_tol) {
  if (!(rho > 0)) throw input_error("excitation_probability_sudden: rho must be positive");
  if (!std::isfinite(xi))
    throw input_error(
        "excitation_probability_sudden: xi is not finite; use "
        "excitation_strong_coupling for the xi -> inf limit");
  if (!(series_tol > 0)) throw input_error("excitation_probability_sudden: series_tol must be > 0");
  if (xi == 0.0 || rho == 1.0) return 0.0;

  const double q2 = qratio(rho) * qratio(rho);
  const double xi2 = xi * xi;
  const double pref =
      2.0 * std::sqrt(rho) * (rho - 1.0) * (rho - 1.0) / ((1.0 + rho) * (1.0 + rho) * (1.0 + rho));

  // term_j = xi^2 (2j+1)!!/(2^j j!) q^{2j} / [1/2 + 4 xi^2 (j+1) + sqrt(1/4 + 2 xi^2 (j+1))];
  // for |xi| > 1e6 the equivalent form with inv = 1/xi avoids overflow (the
  // series stays finite as xi -> inf, xi^2 cancels against the denominator).
  const bool huge = std::abs(xi) > 1e6;
  const double inv = huge ? 1.0 / xi : 0.0;

  double sum = 0.0;
  double qpow = 1.0;
  for (int j = 0;; ++j) {
    double coupling;
    if (!huge) {
      const double u = xi2 * (j + 1.0);
      coupling = xi2 / (0.5 + 4.0 * u + std::sqrt(0.25 + 2.0 * u));
    } else {
      const double inv2 = inv * inv;
      coupling = 1.0 / (0.5 * inv2 + 4.0 * (j + 1.0) +
                        std::abs(inv) * std::sqrt(0.25 * inv2 + 2.0 * (j + 1.0)));
    }
    const double term = odd_weight(j) * qpow * coupling;
    sum += term;
    qpow *= q2;
    if (j >= 2 && term < series_tol * sum) break;
    if (j >= kMaxTerms) {
      std::ostringstream msg;
      msg << "excitation_probability_sudden: series not converged after " << kMaxTerms
          << " terms (rho = " << rho << "); rho this extreme needs the strong-coupling form";
      throw numerics_error(msg.str());
    }
  }
  return pref * sum;
}

double excitation_weak_coupling(double rho, double xi) {
  if (!(rho > 0)) throw input_error("excitation_weak_coupling: rho must be positive");
  const double N = (rho - 1.0) * (rho - 1.0) / (4.0 * rho);
  const double xi2 = xi * xi;
  const double corr =
      6.0 * xi2 / (N + 1.0) *
      (1.0 + N / (2.0 * (N + 1.0)) * (1.0 - 3.0 * std::pow(N + 1.0, -1.25)));
  return xi2 * N * (1.0 - corr);
}

double excitation_strong_coupling(double rho) {
  if (!(rho > 0)) throw input_error("excitation_strong_coupling: rho must be positive");
  const double N = (rho - 1.0) * (rho - 1.0) / (4.0 * rho);
  return N / (2.0 * (1.0 + N + std::sqrt(N + 1.0)));
}

MeanPhotonResult mean_photons_with_atom(double rho, double xi, double series_tol) {
  const double N = (rho - 1.0) * (rho - 1.0) / (4.0 * rho);
  const double w = std::isinf(xi) ? excitation_strong_coupling(rho)
                                  : excitation_probability_sudden(rho, xi, series_tol);

  // direct dressed-amplitude sum: each even Fock component c_m splits between
  // the dressed pair of level m; the excited branch carries photon label m-1.
  // Weights follow the series convention (even in the detuning sign).  The
  // amplitude set is truncated 1e-4 tighter than series_tol because the sum
  // weights the tail by the photon number.
  const SqueezedVacuum sv = squeezed_vacuum_amplitudes(rho, series_tol * 1e-4);
  const double xi2 = xi * xi;
  double direct = 0.0;
  for (int j = 1; j <= sv.j_max; ++j) {
    const double m = 2.0 * j;
    const double c2 = sv.amplitudes[j] * sv.amplitudes[j];
    double s_m;  // |S_m|^2 of the excited branch
    if (std::isinf(xi2)) {
      s_m = std::sqrt(m) / (2.0 * std::sqrt(m) + std::sqrt(2.0));  // xi -> inf limit
    } else {
      s_m = xi2 * m / (0.5 + 2.0 * xi2 * m + std::sqrt(0.25 + xi2 * m));
    }
    direct += c2 * (m - s_m);
  }
  return {N - w, direct, w, N};
}

}  // namespace qcavity
