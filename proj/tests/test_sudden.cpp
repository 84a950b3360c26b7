#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qcavity/sudden.hpp"

using namespace qcavity;

namespace {
constexpr double kTol = 1e-14;
// frozen reference values, 40-digit evaluation of the printed formulas
constexpr double kW10_rho10_xi005 = 4.78401917677e-3;   // full series
constexpr double kW11_rho10_xi005 = 5.03531286422e-3;   // weak-coupling form
constexpr double kW12_rho10 = 0.212520212712;           // strong-coupling form
constexpr double kC0_rho10 = 0.758260888201;            // (2 sqrt(10)/11)^(1/2)
}  // namespace

TEST_CASE("dressed coefficients") {
  SUBCASE("resonance gives the symmetric mixture") {
    for (const int n : {1, 2, 7}) {
      const auto c = dressed_coeffs(n, 0.0, 0.3);
      CHECK(c.R_plus == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
      CHECK(c.R_minus == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
      CHECK(c.S_plus == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
      CHECK(c.S_minus == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    }
  }
  SUBCASE("decoupling limit, positive detuning") {
    const auto c = dressed_coeffs(3, 1.0, 0.0);
    CHECK(c.R_plus == 1.0);
    CHECK(c.S_plus == 0.0);
    CHECK(c.S_minus == 1.0);
    CHECK(c.R_minus == 0.0);
  }
  SUBCASE("small lambda stays stable, no cancellation") {
    const auto c = dressed_coeffs(2, 1.0, 1e-12);
    CHECK(c.R_minus == doctest::Approx(1e-12 * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(c.S_minus == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("normalization and orthogonality, random inputs") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ddist(-5.0, 5.0), ldist(0.0, 3.0);
    std::uniform_int_distribution<int> ndist(1, 40);
    for (int i = 0; i < 500; ++i) {
      const int n = ndist(rng);
      const double D = ddist(rng), l = ldist(rng);
      if (D == 0.0 && l == 0.0) continue;
      const auto c = dressed_coeffs(n, D, l);
      CHECK(std::abs(c.R_minus * c.R_minus + c.S_minus * c.S_minus - 1.0) < 1e-12);
      CHECK(std::abs(c.R_plus * c.R_plus + c.S_plus * c.S_plus - 1.0) < 1e-12);
      CHECK(std::abs(c.S_minus * c.S_plus - c.R_minus * c.R_plus) < 1e-12);
    }
  }
  SUBCASE("continuous across Delta = 0") {
    const auto below = dressed_coeffs(2, -1e-12, 0.4);
    const auto at = dressed_coeffs(2, 0.0, 0.4);
    const auto above = dressed_coeffs(2, 1e-12, 0.4);
    CHECK(std::abs(below.R_plus - at.R_plus) < 1e-10);
    CHECK(std::abs(above.R_plus - at.R_plus) < 1e-10);
    CHECK(std::abs(below.S_minus - at.S_minus) < 1e-10);
  }
  SUBCASE("n = 0 reports the undressed ground state") {
    const auto c = dressed_coeffs(0, 1.0, 0.5);
    CHECK(c.is_ground);
    CHECK(c.S_minus == 1.0);
    CHECK(c.R_minus == 0.0);
  }
  SUBCASE("degenerate input rejected") {
    CHECK_THROWS_AS(dressed_coeffs(2, 0.0, 0.0), input_error);
  }
}

TEST_CASE("dressed energies") {
  SUBCASE("bare levels at lambda = 0") {
    const auto e = dressed_energies(3, 1.0, 1.5, 0.0);  // Delta = 0.5 > 0
    CHECK(e.E_down == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.E_up == doctest::Approx(3.0 + 0.5).epsilon(1e-14));  // w(n-1) + E0
  }
  SUBCASE("vacuum Rabi splitting at resonance") {
    for (const int n : {1, 2, 5}) {
      const auto e = dressed_energies(n, 1.0, 1.0, 0.25);
      CHECK(e.E_up - e.E_down ==
            doctest::Approx(2.0 * 0.25 * std::sqrt(static_cast<double>(n))).epsilon(1e-14));
    }
  }
  SUBCASE("ordering") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.01, 4.0);
    for (int i = 0; i < 200; ++i) {
      const auto e = dressed_energies(1 + static_cast<int>(u(rng) * 5), u(rng), u(rng), u(rng));
      CHECK(e.E_up >= e.E_down);
    }
  }
}

TEST_CASE("squeezed vacuum amplitudes") {
  SUBCASE("identity quench") {
    const auto sv = squeezed_vacuum_amplitudes(1.0, 1e-14);
    CHECK(sv.amplitudes.size() == 1);
    CHECK(sv.amplitudes[0] == 1.0);
    CHECK(sv.norm_deficit == 0.0);
  }
  SUBCASE("leading amplitude at rho = 10") {
    const auto sv = squeezed_vacuum_amplitudes(10.0, 1e-14);
    CHECK(sv.amplitudes[0] == doctest::Approx(kC0_rho10).epsilon(1e-12));
  }
  SUBCASE("normalized within series_tol") {
    for (const double rho : {2.0, 10.0, 100.0, 0.03}) {
      const auto sv = squeezed_vacuum_amplitudes(rho, 1e-14);
      CHECK(std::abs(sv.norm_deficit) < 1e-10);
    }
  }
  SUBCASE("rho -> 1/rho flips signs only") {
    const auto a = squeezed_vacuum_amplitudes(7.0, 1e-13);
    const auto b = squeezed_vacuum_amplitudes(1.0 / 7.0, 1e-13);
    const std::size_t m = std::min(a.amplitudes.size(), b.amplitudes.size());
    for (std::size_t j = 0; j < m; ++j)
      CHECK(std::abs(std::abs(a.amplitudes[j]) - std::abs(b.amplitudes[j])) < 1e-12);
  }
  SUBCASE("signs alternate") {
    const auto sv = squeezed_vacuum_amplitudes(10.0, 1e-12);
    for (std::size_t j = 0; j + 1 < sv.amplitudes.size(); ++j)
      CHECK(sv.amplitudes[j] * sv.amplitudes[j + 1] < 0.0);
  }
  SUBCASE("invalid input") {
    CHECK_THROWS_AS(squeezed_vacuum_amplitudes(-1.0, 1e-12), input_error);
    CHECK_THROWS_AS(squeezed_vacuum_amplitudes(0.0, 1e-12), input_error);
  }
}

TEST_CASE("squeezed one-photon amplitudes") {
  SUBCASE("identity quench") {
    const auto d = squeezed_fock1_amplitudes(1.0, 1e-14);
    CHECK(d.size() == 1);
    CHECK(d[0] == 1.0);
  }
  SUBCASE("normalized") {
    for (const double rho : {2.0, 10.0, 40.0}) {
      const auto d = squeezed_fock1_amplitudes(rho, 1e-16);
      double s = 0.0;
      for (const double x : d) s += x * x;
      CHECK(std::abs(s - 1.0) < 1e-11);
    }
  }
}

TEST_CASE("excitation probability, full series") {
  SUBCASE("no quench, no excitation") {
    CHECK(excitation_probability_sudden(1.0, 0.7, kTol) == 0.0);
    CHECK(excitation_probability_sudden(10.0, 0.0, kTol) == 0.0);
  }
  SUBCASE("frozen value at rho = 10, xi = 0.05") {
    CHECK(excitation_probability_sudden(10.0, 0.05, kTol) ==
          doctest::Approx(kW10_rho10_xi005).epsilon(1e-10));
  }
  SUBCASE("independent amplitude-level route agrees") {
    // w = sum_j S_{2j+2}^2 c_{2j+2}^2 built from the dressed coefficients and
    // the squeezed amplitudes directly (detuning sign irrelevant, xi^2 even)
    const double rho = 10.0, xi = 0.05;
    const auto sv = squeezed_vacuum_amplitudes(rho, 1e-18);
    double w = 0.0;
    for (int j = 1; j <= sv.j_max; ++j) {
      const int m = 2 * j;
      const double S2 =
          xi * xi * m / (0.5 + 2.0 * xi * xi * m + std::sqrt(0.25 + xi * xi * m));
      w += S2 * sv.amplitudes[j] * sv.amplitudes[j];
    }
    CHECK(excitation_probability_sudden(rho, xi, kTol) == doctest::Approx(w).epsilon(1e-11));
  }
  SUBCASE("symmetric under rho -> 1/rho") {
    for (const double rho : {1.5, 3.0, 10.0, 30.0})
      for (const double xi : {0.05, 0.5, 5.0}) {
        const double a = excitation_probability_sudden(rho, xi, kTol);
        const double b = excitation_probability_sudden(1.0 / rho, xi, kTol);
        CHECK(std::abs(a - b) < 1e-12);
      }
  }
  SUBCASE("monotone in xi toward the strong-coupling plateau") {
    const double plateau = excitation_strong_coupling(10.0);
    double prev = 0.0;
    for (const double xi : {0.01, 0.1, 0.5, 1.0, 5.0, 50.0}) {
      const double w = excitation_probability_sudden(10.0, xi, kTol);
      CHECK(w > prev);
      CHECK(w < plateau);
      prev = w;
    }
  }
  SUBCASE("bounded by 1/2 on the grid") {
    for (const double rho : {1.5, 3.0, 10.0, 30.0})
      for (const double xi : {0.05, 0.5, 5.0}) {
        const double w = excitation_probability_sudden(rho, xi, kTol);
        CHECK(w >= 0.0);
        CHECK(w <= 0.5);
      }
  }
  SUBCASE("huge xi routed through the overflow-safe form") {
    const double w_big = excitation_probability_sudden(10.0, 1e8, kTol);
    const double w_lim = excitation_strong_coupling(10.0);
    CHECK(std::abs(w_big - w_lim) / w_lim < 1e-6);
    CHECK(std::isfinite(excitation_probability_sudden(10.0, 1e150, kTol)));
  }
  SUBCASE("infinite xi rejected with guidance") {
    CHECK_THROWS_AS(
        excitation_probability_sudden(10.0, std::numeric_limits<double>::infinity(), kTol),
        input_error);
  }
}

TEST_CASE("weak-coupling closed form") {
  CHECK(excitation_weak_coupling(1.0, 0.3) == 0.0);
  CHECK(excitation_weak_coupling(10.0, 0.05) ==
        doctest::Approx(kW11_rho10_xi005).epsilon(1e-10));
  // leading order agrees with the series as xi -> 0
  const double xi = 1e-4;
  const double w10 = excitation_probability_sudden(10.0, xi, kTol);
  const double w11 = excitation_weak_coupling(10.0, xi);
  CHECK(std::abs(w11 - w10) / w10 < 1e-6);
}

TEST_CASE("strong-coupling closed form") {
  CHECK(excitation_strong_coupling(1.0) == 0.0);
  CHECK(excitation_strong_coupling(10.0) == doctest::Approx(kW12_rho10).epsilon(1e-12));
  // the two printed forms of the limit coincide
  for (const double rho : {2.0, 10.0, 333.0}) {
    const double N = (rho - 1) * (rho - 1) / (4 * rho);
    const double other = (rho - 1) * (rho - 1) /
                         (2.0 * (1.0 + rho) * (1.0 + std::sqrt(rho)) * (1.0 + std::sqrt(rho)));
    CHECK(excitation_strong_coupling(rho) == doctest::Approx(other).epsilon(1e-13));
    CHECK(excitation_strong_coupling(rho) ==
          doctest::Approx(N / (2.0 * (1.0 + N + std::sqrt(N + 1.0)))).epsilon(1e-15));
  }
  // w -> 1/2 far out
  CHECK(excitation_strong_coupling(1e7) == doctest::Approx(0.5).epsilon(1e-3));
  // series at xi = 100 sits within 2% of the limit (rho = 10)
  const double w10 = excitation_probability_sudden(10.0, 100.0, kTol);
  CHECK(std::abs(w10 - kW12_rho10) / kW12_rho10 < 0.02);
}

TEST_CASE("mean photons with the atom present") {
  SUBCASE("no coupling") {
    const auto m = mean_photons_with_atom(10.0, 0.0, kTol);
    CHECK(m.n_bar == doctest::Approx(2.025).epsilon(1e-14));
    CHECK(m.w_up == 0.0);
  }
  SUBCASE("no quench") {
    const auto m = mean_photons_with_atom(1.0, 0.5, kTol);
    CHECK(m.n_bar == 0.0);
    CHECK(m.n_bar_direct == 0.0);
  }
  SUBCASE("direct amplitude sum matches the bookkeeping identity") {
    const auto m = mean_photons_with_atom(10.0, 0.05, kTol);
    CHECK(m.N_dce == doctest::Approx(2.025).epsilon(1e-14));
    CHECK(std::abs(m.n_bar_direct - m.n_bar) <= 10.0 * kTol);
  }
}
