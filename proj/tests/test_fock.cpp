#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <random>

#include "propagator.hpp"
#include "qcavity/bogoliubov.hpp"
#include "qcavity/fock.hpp"
#include "qcavity/sudden.hpp"
#include "qcavity/transient.hpp"

using namespace qcavity;
using cd = std::complex<double>;

namespace {
const ModelParams kFig2{0.8, 0.5, 5.0, 0.05, 1.0};

Eigen::VectorXcd random_state(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = cd(g(rng), g(rng));
  v.normalize();
  return v;
}
}  // namespace

TEST_CASE("hamiltonian construction") {
  const auto profile = profile_for(kFig2);

  SUBCASE("exactly Hermitian") {
    const auto H = build_hamiltonian(kFig2, profile, 0.37, 24);
    CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("diagonal at lambda = 0 and constant frequency") {
    ModelParams p = kFig2;
    p.lambda = 0.0;
    const auto flat = FrequencyProfile::smooth(1.0, 1.0, 1.0);
    const auto H = build_hamiltonian(p, flat, 0.0, 8);
    for (int i = 0; i < H.rows(); ++i)
      for (int j = 0; j < H.cols(); ++j)
        if (i != j) CHECK(std::abs(H(i, j)) == 0.0);
    // bare ladder on the diagonal, and the eigensolver agrees
    CHECK(H(2 * 3, 2 * 3).real() == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(H(2 * 3 + 1, 2 * 3 + 1).real() == doctest::Approx(3.8).epsilon(1e-15));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    Eigen::VectorXd diag = H.diagonal().real();
    std::sort(diag.data(), diag.data() + diag.size());
    CHECK((es.eigenvalues() - diag).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("squeeze block couples same spin, photon number +-2") {
    const auto H = build_hamiltonian(kFig2, profile, 0.0, 12);
    auto idx = [](int n, int s) { return 2 * n + s; };
    // pure DCE element: imaginary, spin diagonal
    CHECK(std::abs(H(idx(1, 0), idx(3, 0)).imag()) > 0.0);
    CHECK(H(idx(1, 0), idx(3, 0)).real() == 0.0);
    CHECK(std::abs(H(idx(1, 0), idx(3, 1))) == 0.0);
    CHECK(std::abs(H(idx(1, 0), idx(4, 0))) == 0.0);
  }
  SUBCASE("rotating-wave variant drops the counter-rotating coupling") {
    const auto Hf = build_hamiltonian(kFig2, profile, 0.0, 12, CouplingModel::full);
    const auto Hr = build_hamiltonian(kFig2, profile, 0.0, 12, CouplingModel::rotating_wave);
    auto idx = [](int n, int s) { return 2 * n + s; };
    CHECK(std::abs(Hf(idx(0, 0), idx(1, 1))) > 0.0);   // counter-rotating
    CHECK(std::abs(Hr(idx(0, 0), idx(1, 1))) == 0.0);
    CHECK(Hf(idx(1, 0), idx(0, 1)) == Hr(idx(1, 0), idx(0, 1)));  // co-rotating kept
  }
}

TEST_CASE("matrix-free action matches the dense matrix") {
  const auto profile = profile_for(kFig2);
  for (const auto mode : {CouplingModel::full, CouplingModel::rotating_wave}) {
    const int n_max = 17;
    const auto H = build_hamiltonian(kFig2, profile, 0.29, n_max, mode);
    detail::HamAction act(n_max, kFig2.E0, kFig2.lambda,
                          mode == CouplingModel::full ? detail::Coupling::full
                                                      : detail::Coupling::rotating_wave);
    const auto [w, wd] = profile(0.29);
    act.set_frequency(w, wd);
    const auto v = random_state(act.dim(), 5);
    Eigen::VectorXcd y(act.dim());
    act.apply(v, y);
    CHECK((y - H * v).cwiseAbs().maxCoeff() < 1e-14);

    double emin, emax;
    act.bounds(emin, emax);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    CHECK(es.eigenvalues().minCoeff() >= emin - 1e-12);
    CHECK(es.eigenvalues().maxCoeff() <= emax + 1e-12);
  }
}

TEST_CASE("bessel array against the standard library") {
  for (const double z : {0.3, 2.0, 17.5, 90.0}) {
    const int K = static_cast<int>(z) + 30;
    const auto j = detail::bessel_j_array(z, K);
    for (const int k : {0, 1, 5, K / 2}) {
      CHECK(j[k] == doctest::Approx(std::cyl_bessel_j(k, z)).epsilon(1e-10));
    }
  }
}

TEST_CASE("chebyshev exponential against eigendecomposition") {
  const auto profile = profile_for(kFig2);
  const int n_max = 14;
  detail::HamAction act(n_max, kFig2.E0, kFig2.lambda, detail::Coupling::full);
  const auto [w, wd] = profile(-0.4);
  act.set_frequency(w, wd);
  const auto H = build_hamiltonian(kFig2, profile, -0.4, n_max);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  for (const double dt : {1e-3, 0.05, 0.8, 7.0}) {
    Eigen::VectorXcd psi = random_state(act.dim(), 42);
    const Eigen::VectorXcd exact =
        es.eigenvectors() *
        (Eigen::VectorXcd)((-cd(0, 1) * dt * es.eigenvalues().array().cast<cd>()).exp() *
                           (es.eigenvectors().adjoint() * psi).array());
    detail::expm_apply(act, dt, psi);
    CHECK((psi - exact).norm() < 1e-12);
    CHECK(std::abs(psi.norm() - 1.0) < 1e-13);
  }
}

TEST_CASE("evolution at lambda = 0 reproduces the mode-function photon number") {
  ModelParams p = kFig2;
  p.lambda = 0.0;
  NumericsConfig cfg;
  cfg.fock_max = 96;
  const auto profile = profile_for(p);
  const auto run = evolve(p, profile, cfg, CouplingModel::full);
  const auto traj = integrate_bogoliubov(profile, cfg);

  REQUIRE(run.records.size() == traj.times.size());
  CHECK(run.truncation_safe);
  CHECK(run.norm_drift < 1e-10);
  double worst = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    worst = std::max(worst,
                     std::abs(run.records[i].mean_photons - std::norm(traj.beta[i])));
  CHECK(worst < 1e-6);

  SUBCASE("photon parity stays even without the atom") {
    for (const auto& rec : run.records) CHECK(rec.odd_weight < 1e-12);
  }
}

TEST_CASE("odd-photon channel opens with the coupling and scales as lambda^2") {
  NumericsConfig cfg;
  cfg.fock_max = 48;
  const auto profile = profile_for(kFig2);
  ModelParams p1 = kFig2;
  p1.lambda = 0.01;
  ModelParams p2 = kFig2;
  p2.lambda = 0.02;
  const auto r1 = evolve(p1, profile, cfg, CouplingModel::full);
  const auto r2 = evolve(p2, profile, cfg, CouplingModel::full);
  const double o1 = r1.records.back().odd_weight;
  const double o2 = r2.records.back().odd_weight;
  CHECK(o1 > 0.0);
  const double ratio = o2 / o1;
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);
}

TEST_CASE("excitation-number flux matches the squeeze expectation") {
  // d<N>/dt = -(w'/2w) <a^2 + a^dag^2> for the co-rotating model
  ModelParams p = kFig2;
  p.lambda = 0.3;
  NumericsConfig cfg;
  cfg.fock_max = 48;
  cfg.window = std::array<double, 2>{-30.0, 20.0};
  cfg.sample_count = 5001;
  const auto profile = profile_for(p);
  const auto run = evolve(p, profile, cfg, CouplingModel::rotating_wave);

  const double h = run.records[1].time - run.records[0].time;
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 2; i + 2 < run.records.size(); i += 10) {
    const double lhs = (-run.records[i + 2].N_expectation +
                        8.0 * run.records[i + 1].N_expectation -
                        8.0 * run.records[i - 1].N_expectation +
                        run.records[i - 2].N_expectation) /
                       (12.0 * h);
    const auto [w, wd] = profile(run.records[i].time);
    const double rhs = -wd / (2.0 * w) * run.records[i].squeeze_expectation;
    worst = std::max(worst, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(rhs));
  }
  CHECK(worst < 2e-3 * scale + 1e-10);
}

TEST_CASE("N conserved for the stationary co-rotating model") {
  ModelParams p;
  p.E0 = 0.8;
  p.omega1 = 1.0;
  p.omega2 = 1.0;
  p.lambda = 0.5;
  p.tau = 1.0;
  NumericsConfig cfg;
  cfg.fock_max = 16;
  cfg.window = std::array<double, 2>{-1.0, 80.0};
  cfg.sample_count = 1001;
  Eigen::VectorXcd init = Eigen::VectorXcd::Zero(2 * (cfg.fock_max + 1));
  init[0] = init[1] = init[2] = 1.0 / std::sqrt(3.0);
  const auto run =
      evolve(p, FrequencyProfile::smooth(1.0, 1.0, 1.0), cfg, CouplingModel::rotating_wave, &init);
  const double N0 = run.records.front().N_expectation;
  CHECK(N0 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  double drift = 0.0, contrast = 0.0;
  for (const auto& rec : run.records) {
    drift = std::max(drift, std::abs(rec.N_expectation - N0));
    contrast = std::max(contrast, std::abs(rec.P_excited - run.records.front().P_excited));
  }
  CHECK(drift < 1e-8);
  CHECK(contrast > 0.1);  // the superposition actually Rabi-oscillates
}

TEST_CASE("truncation monitor flags an undersized basis") {
  ModelParams p = kFig2;
  p.lambda = 0.0;
  p.tau = 1e-3;  // sudden quench populates high Fock states
  NumericsConfig cfg;
  cfg.fock_max = 8;
  const auto run = evolve(p, profile_for(p), cfg, CouplingModel::full);
  CHECK_FALSE(run.truncation_safe);
  CHECK(run.max_top_population > cfg.truncation_tol);
}

TEST_CASE("truncation convergence of asymptotic observables") {
  ModelParams p = kFig2;
  p.lambda = 0.01;
  NumericsConfig small;
  small.fock_max = 32;
  NumericsConfig large;
  large.fock_max = 48;
  const auto profile = profile_for(p);
  const auto a = evolve(p, profile, small, CouplingModel::rotating_wave);
  const auto b = evolve(p, profile, large, CouplingModel::rotating_wave);
  CHECK(a.truncation_safe);
  CHECK(std::abs(a.w_up_asymptotic - b.w_up_asymptotic) < 10.0 * small.truncation_tol);
  CHECK(std::abs(a.n_bar_asymptotic - b.n_bar_asymptotic) < 10.0 * small.truncation_tol);
}

TEST_CASE("initial-state validation") {
  NumericsConfig cfg;
  cfg.fock_max = 8;
  Eigen::VectorXcd bad_dim = Eigen::VectorXcd::Zero(4);
  bad_dim[0] = 1.0;
  CHECK_THROWS_AS(evolve(kFig2, profile_for(kFig2), cfg, CouplingModel::full, &bad_dim),
                  input_error);
  Eigen::VectorXcd unnorm = Eigen::VectorXcd::Zero(2 * (cfg.fock_max + 1));
  unnorm[0] = 0.5;
  CHECK_THROWS_AS(evolve(kFig2, profile_for(kFig2), cfg, CouplingModel::full, &unnorm),
                  input_error);
  CHECK_THROWS_AS(
      evolve(kFig2, FrequencyProfile::sudden_jump(0.5, 5.0), cfg, CouplingModel::full),
      input_error);
}

TEST_CASE("oracle cross checks are trivially exact without coupling") {
  ModelParams p = kFig2;
  p.lambda = 0.0;
  NumericsConfig cfg;
  cfg.fock_max = 24;
  const auto report = oracle_cross_checks(p, cfg);
  for (const auto& line : report.lines) {
    CAPTURE(line.name);
    CHECK(line.pass);
    CHECK(std::abs(line.value_a) < 1e-10);
  }
}

TEST_CASE("oracle cross checks pass in the perturbative regime") {
  ModelParams p = kFig2;
  p.lambda = 0.01;
  NumericsConfig cfg;
  cfg.fock_max = 48;
  const auto report = oracle_cross_checks(p, cfg);
  REQUIRE(report.lines.size() == 3);
  for (const auto& line : report.lines) {
    CAPTURE(line.name);
    CAPTURE(line.value_a);
    CAPTURE(line.value_b);
    CHECK(line.pass);
  }
  CHECK(report.all_pass());
}
