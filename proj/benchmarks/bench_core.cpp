#include <benchmark/benchmark.h>

#include "qcavity/backreaction.hpp"
#include "qcavity/bogoliubov.hpp"
#include "qcavity/fock.hpp"
#include "qcavity/sudden.hpp"
#include "qcavity/transient.hpp"

namespace {

using namespace qcavity;

ModelParams fig_params() { return {0.8, 0.5, 5.0, 0.05, 1.0}; }

void BM_IntegrateBogoliubov(benchmark::State& state) {
  const auto profile = FrequencyProfile::smooth(0.5, 5.0, 1.0);
  NumericsConfig cfg;
  for (auto _ : state) {
    auto traj = integrate_bogoliubov(profile, cfg);
    benchmark::DoNotOptimize(traj.beta_inf);
  }
}
BENCHMARK(BM_IntegrateBogoliubov)->Unit(benchmark::kMillisecond);

void BM_TransientPipeline(benchmark::State& state) {
  const ModelParams p = fig_params();
  NumericsConfig cfg;
  const auto traj = integrate_bogoliubov(profile_for(p), cfg);
  for (auto _ : state) {
    auto res = excitation_probability_transient(traj, p);
    benchmark::DoNotOptimize(res.w_up);
  }
}
BENCHMARK(BM_TransientPipeline)->Unit(benchmark::kMillisecond);

void BM_SuddenSeries(benchmark::State& state) {
  for (auto _ : state) {
    double w = excitation_probability_sudden(10.0, 0.5, 1e-14);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_SuddenSeries);

void BM_SqueezedAmplitudes(benchmark::State& state) {
  for (auto _ : state) {
    auto sv = squeezed_vacuum_amplitudes(100.0, 1e-14);
    benchmark::DoNotOptimize(sv.norm_deficit);
  }
}
BENCHMARK(BM_SqueezedAmplitudes);

void BM_Eta(benchmark::State& state) {
  ModelParams p = fig_params();
  p.tau = 0.5;
  NumericsConfig cfg;
  for (auto _ : state) {
    auto res = eta(p, cfg);
    benchmark::DoNotOptimize(res.eta);
  }
}
BENCHMARK(BM_Eta)->Unit(benchmark::kMillisecond);

void BM_OracleEvolve(benchmark::State& state) {
  ModelParams p = fig_params();
  p.lambda = 0.01;
  NumericsConfig cfg;
  cfg.fock_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto run = evolve(p, profile_for(p), cfg, CouplingModel::rotating_wave);
    benchmark::DoNotOptimize(run.w_up_asymptotic);
  }
}
BENCHMARK(BM_OracleEvolve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_BuildHamiltonian(benchmark::State& state) {
  const ModelParams p = fig_params();
  const auto profile = profile_for(p);
  for (auto _ : state) {
    auto H = build_hamiltonian(p, profile, 0.3, 64);
    benchmark::DoNotOptimize(H(0, 0));
  }
}
BENCHMARK(BM_BuildHamiltonian)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
