#include "propagator.hpp"

#include <algorithm>
#include <cmath>

namespace qcavity::detail {

namespace {
using cd = std::complex<double>;
constexpr double kMaxChebyshevZ = 400.0;  // cap on ||H|| dt per exponential
}  // namespace

HamAction::HamAction(int n_max, double E0, double lambda, Coupling mode)
    : n_max_(n_max), E0_(E0), lambda_(lambda), mode_(mode) {
  sqn_.resize(n_max + 2);
  sq2_.resize(n_max + 1);
  for (int n = 0; n <= n_max + 1; ++n) sqn_[n] = std::sqrt(static_cast<double>(n));
  for (int n = 0; n <= n_max; ++n)
    sq2_[n] = n + 2 <= n_max ? std::sqrt(static_cast<double>((n + 1) * (n + 2))) : 0.0;
}

void HamAction::set_frequency(double omega, double omega_dot) {
  omega_ = omega;
  squeeze_ = omega_dot / (4.0 * omega);
}

void HamAction::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  const int N = n_max_;
  auto idx = [](int n, int s) { return 2 * n + s; };
  y.setZero();
  for (int n = 0; n <= N; ++n) {
    for (int s = 0; s < 2; ++s) {
      const int i = idx(n, s);
      y[i] += (omega_ * n + E0_ * s) * x[i];
      if (n + 2 <= N) {
        // i g (a^2 - a^dag^2): <n|H|n+2> = i g sqrt((n+1)(n+2))
        const cd v = cd(0.0, squeeze_) * sq2_[n];
        y[i] += v * x[idx(n + 2, s)];
        y[idx(n + 2, s)] -= v * x[i];
      }
    }
    if (n >= 1) {
      // co-rotating: (n,down) <-> (n-1,up), element lambda sqrt(n)
      const double v = lambda_ * sqn_[n];
      y[idx(n, 0)] += v * x[idx(n - 1, 1)];
      y[idx(n - 1, 1)] += v * x[idx(n, 0)];
    }
    if (mode_ == Coupling::full && n + 1 <= N) {
      // counter-rotating: (n,down) <-> (n+1,up), element lambda sqrt(n+1)
      const double v = lambda_ * sqn_[n + 1];
      y[idx(n, 0)] += v * x[idx(n + 1, 1)];
      y[idx(n + 1, 1)] += v * x[idx(n, 0)];
    }
  }
}

void HamAction::bounds(double& emin, double& emax) const {
  const int N = n_max_;
  emin = 1e300;
  emax = -1e300;
  const double g = std::abs(squeeze_);
  for (int n = 0; n <= N; ++n) {
    for (int s = 0; s < 2; ++s) {
      const double center = omega_ * n + E0_ * s;
      double r = 0.0;
      if (n + 2 <= N) r += g * sq2_[n];
      if (n >= 2) r += g * sq2_[n - 2];
      if (s == 0) {
        if (n >= 1) r += lambda_ * sqn_[n];
        if (mode_ == Coupling::full && n + 1 <= N) r += lambda_ * sqn_[n + 1];
      } else {
        if (n + 1 <= N) r += lambda_ * sqn_[n + 1];
        if (mode_ == Coupling::full && n >= 1) r += lambda_ * sqn_[n];
      }
      emin = std::min(emin, center - r);
      emax = std::max(emax, center + r);
    }
  }
}

std::vector<double> bessel_j_array(double z, int K) {
  std::vector<double> j(K + 1, 0.0);
  if (z <= 0.0) {
    j[0] = 1.0;
    return j;
  }
  const int M = K + 20 + static_cast<int>(10.0 * std::cbrt(z + 1.0));
  std::vector<long double> b(M + 2, 0.0L);
  b[M + 1] = 0.0L;
  b[M] = 1e-300L;
  for (int k = M; k >= 1; --k) {
    b[k - 1] = (2.0L * k / z) * b[k] - b[k + 1];
    if (std::abs(static_cast<double>(b[k - 1])) > 1e250) {
      for (int i = k - 1; i <= M + 1; ++i) b[i] *= 1e-250L;
    }
  }
  long double norm = b[0];  // J0 + 2 sum_{even k >= 2} Jk = 1
  for (int k = 2; k <= M; k += 2) norm += 2.0L * b[k];
  for (int k = 0; k <= K; ++k) j[k] = static_cast<double>(b[k] / norm);
  return j;
}

void expm_apply(const HamAction& H, double dt, Eigen::VectorXcd& psi) {
  double emin, emax;
  H.bounds(emin, emax);
  const double c = 0.5 * (emax + emin);
  const double s = 0.5 * (emax - emin);
  const double z = s * dt;
  const cd phase = std::polar(1.0, -c * dt);
  if (z < 1e-14) {
    psi *= phase;
    return;
  }

  const int K = static_cast<int>(z + 12.0 * std::cbrt(z + 8.0) + 24.0);
  const std::vector<double> bj = bessel_j_array(z, K);

  // exp(-i z x) = J_0(z) T_0 + 2 sum_k (-i)^k J_k(z) T_k(x), x = (H - c)/s
  Eigen::VectorXcd tkm1 = psi;
  Eigen::VectorXcd tk(psi.size());
  Eigen::VectorXcd scratch(psi.size());
  H.apply(psi, scratch);
  tk = (scratch - c * psi) / s;

  const cd mi(0.0, -1.0);
  cd ik = mi;  // (-i)^k
  Eigen::VectorXcd acc = bj[0] * tkm1 + 2.0 * ik * bj[1] * tk;
  for (int k = 2; k <= K; ++k) {
    if (k + 1 <= K && std::abs(bj[k]) + std::abs(bj[k + 1]) < 1e-17) break;
    H.apply(tk, scratch);
    scratch = 2.0 * (scratch - c * tk) / s - tkm1;
    tkm1.swap(tk);
    tk.swap(scratch);
    ik *= mi;
    if (bj[k] != 0.0) acc += (2.0 * bj[k]) * ik * tk;
  }
  psi = phase * acc;
}

void propagate(HamAction& H, const FrequencyProfile& profile, double t0, double t1, double tol,
               double& h, Eigen::VectorXcd& psi, PropagationStats& stats) {
  if (t1 <= t0) return;
  double t = t0;
  Eigen::VectorXcd full(psi.size()), half(psi.size());

  const auto active = profile.switching_window();
  const double tau_s = profile.switching_timescale();

  while (t < t1) {
    // keep the Chebyshev order bounded
    {
      double emin, emax;
      const auto [w, wd] = profile(t);
      H.set_frequency(w, wd);
      H.bounds(emin, emax);
      const double s = std::max(0.5 * (emax - emin), 1e-12);
      h = std::min(h, kMaxChebyshevZ / s);
    }
    h = std::min(h, t1 - t);
    // never cross the switching region with steps the midpoint samples cannot
    // resolve: a long step whose quadrature nodes all miss the omega_dot spike
    // would silently skip the squeeze
    if (active[0] < active[1] && t < active[1] && t + h > active[0] &&
        std::isfinite(tau_s) && tau_s > 0.0)
      h = std::min(h, 0.5 * tau_s);

    // one midpoint step vs two half steps
    full = psi;
    {
      const auto [w, wd] = profile(t + 0.5 * h);
      H.set_frequency(w, wd);
      expm_apply(H, h, full);
    }
    half = psi;
    {
      const auto [w, wd] = profile(t + 0.25 * h);
      H.set_frequency(w, wd);
      expm_apply(H, 0.5 * h, half);
    }
    {
      const auto [w, wd] = profile(t + 0.75 * h);
      H.set_frequency(w, wd);
      expm_apply(H, 0.5 * h, half);
    }
    const double err = (full - half).norm();

    if (err <= tol) {
      psi = half;
      t += h;
      ++stats.accepted;
      const double grow = err > 0 ? 0.9 * std::cbrt(tol / err) : 5.0;
      h *= std::clamp(grow, 0.5, 5.0);
    } else {
      ++stats.rejected;
      h *= std::clamp(0.9 * std::cbrt(tol / err), 0.1, 0.9);
      if (h < 1e-14 * std::max(1.0, std::abs(t)))
        throw numerics_error("propagate: step size underflow, tolerance unreachable");
    }
  }
}

}  // namespace qcavity::detail
