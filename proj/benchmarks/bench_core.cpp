#include <benchmark/benchmark.h>

#include "sqg/assimilation.hpp"
#include "sqg/dynamics.hpp"
#include "sqg/observation.hpp"
#include "sqg/rng.hpp"
#include "sqg/spectral_ops.hpp"
#include "sqg/streamfunction.hpp"

using namespace sqg;

namespace {

void BM_TransformRoundTrip(benchmark::State& state) {
  GridSpec g(state.range(0), state.range(0));
  SpectralField f = random_band_limited(g, 1, g.dealias_cut_x() * 0.8, 1.0, 1);
  std::vector<double> phys = to_physical(f);
  for (auto _ : state) {
    SpectralField back = from_physical(g, phys);
    benchmark::DoNotOptimize(back.raw(0));
  }
}
BENCHMARK(BM_TransformRoundTrip)->Arg(64)->Arg(128)->Arg(256);

void BM_NonlinearTerm(benchmark::State& state) {
  GridSpec g(state.range(0), state.range(0));
  SpectralField f = random_band_limited(g, 1, 10, 2.0, 2, 1.0);
  for (auto _ : state) {
    SpectralField adv = nonlinear_term(f);
    benchmark::DoNotOptimize(adv.raw(0));
  }
}
BENCHMARK(BM_NonlinearTerm)->Arg(64)->Arg(128)->Arg(256);

void BM_ReferenceStep(benchmark::State& state) {
  GridSpec g(state.range(0), state.range(0));
  PhysicalParams params{0.01, 1.5, 0.0, ForcingSpec::single_shell(2, 1, 0.01)};
  SqgStepper stepper(g, params, {0.005, false});
  SimState s{0.0, random_band_limited(g, 1, 6, 2.0, 3, 1.0)};
  for (auto _ : state) stepper.step(s);
}
BENCHMARK(BM_ReferenceStep)->Arg(128);

void BM_TwinStep(benchmark::State& state) {
  GridSpec g(state.range(0), state.range(0));
  PhysicalParams params{0.01, 1.5, 10.0, ForcingSpec::single_shell(2, 1, 0.01)};
  SqgStepper stepper(g, params, {0.005, false});
  ObservationOperator obs = ObservationOperator::rough_modal(16);
  SimState s{0.0, random_band_limited(g, 1, 6, 2.0, 3, 1.0)};
  SpectralField eta(g);
  eta.set_mean_zero_flag(true);
  for (auto _ : state) stepper.step_twin(s, eta, obs);
}
BENCHMARK(BM_TwinStep)->Arg(128);

void BM_VolumeApply(benchmark::State& state) {
  GridSpec g(256, 256);
  auto pou = std::make_shared<PartitionOfUnity>(build_partition(state.range(0), g));
  ObservationOperator op = ObservationOperator::volume_average(pou);
  SpectralField f = random_band_limited(g, 1, 20, 1.0, 4);
  for (auto _ : state) {
    SpectralField out = op.apply(f);
    benchmark::DoNotOptimize(out.raw(0));
  }
}
BENCHMARK(BM_VolumeApply)->Arg(9)->Arg(16);

void BM_BuildPartition(benchmark::State& state) {
  GridSpec g(256, 256);
  for (auto _ : state) {
    PartitionOfUnity pou = build_partition(state.range(0), g);
    benchmark::DoNotOptimize(pou.a_tilde(0));
  }
}
BENCHMARK(BM_BuildPartition)->Arg(9)->Arg(16);

void BM_GradientErrorQuadrature(benchmark::State& state) {
  GridSpec g(64, 64);
  SpectralField zeta = random_band_limited(g, 1, 8, 1.0, 5);
  auto spec = StreamExtensionSpec::standard();
  for (auto _ : state) benchmark::DoNotOptimize(gradient_error_quadrature(zeta, spec));
}
BENCHMARK(BM_GradientErrorQuadrature);

}  // namespace

BENCHMARK_MAIN();
