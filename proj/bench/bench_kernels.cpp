// Serial reference kernels against the OpenMP ones.
//   OMP_NUM_THREADS=8 ./bench_kernels

#include <benchmark/benchmark.h>

#include <random>

#include "rosenau/flux.hpp"
#include "rosenau/operator.hpp"

using namespace rosenau;

namespace {

SpacePtr space_for(const benchmark::State& state) {
  return make_space(build_uniform_mesh(-10.0, 10.0, static_cast<std::size_t>(state.range(0))),
                    static_cast<int>(state.range(1)));
}

DGVector random_state(const SpacePtr& space) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  DGVector u(space);
  for (double& c : u.coefficients()) {
    c = dist(rng);
  }
  return u;
}

void BM_AssembleB_Serial(benchmark::State& state) {
  const auto space = space_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::assemble_B(*space, PenaltyParams{}, 0.5));
  }
}

void BM_AssembleB_Threaded(benchmark::State& state) {
  const auto space = space_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_B(*space, PenaltyParams{}, 0.5));
  }
}

void BM_FluxResidual_Serial(benchmark::State& state) {
  const auto space = space_for(state);
  const DGVector u = random_state(space);
  const FluxSpec spec = FluxSpec::decay_experiment();
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::assemble_rhs(spec, u));
  }
}

void BM_FluxResidual_Threaded(benchmark::State& state) {
  const auto space = space_for(state);
  const DGVector u = random_state(space);
  const FluxAssembler fa(space, FluxSpec::decay_experiment());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fa.residual(u));
  }
}

void BM_FluxJacobian_Serial(benchmark::State& state) {
  const auto space = space_for(state);
  const DGVector u = random_state(space);
  const FluxSpec spec = FluxSpec::decay_experiment();
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::assemble_rhs_jacobian(spec, u));
  }
}

void BM_FluxJacobian_Threaded(benchmark::State& state) {
  const auto space = space_for(state);
  const DGVector u = random_state(space);
  const FluxAssembler fa(space, FluxSpec::decay_experiment());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fa.jacobian(u));
  }
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {1000, 10000, 100000}) {
    for (int k : {2, 3}) {
      b->Args({n, k});
    }
  }
  b->ArgNames({"N", "k"})->Unit(benchmark::kMicrosecond)->UseRealTime();
}

} // namespace

BENCHMARK(BM_AssembleB_Serial)->Apply(sizes);
BENCHMARK(BM_AssembleB_Threaded)->Apply(sizes);
BENCHMARK(BM_FluxResidual_Serial)->Apply(sizes);
BENCHMARK(BM_FluxResidual_Threaded)->Apply(sizes);
BENCHMARK(BM_FluxJacobian_Serial)->Apply(sizes);
BENCHMARK(BM_FluxJacobian_Threaded)->Apply(sizes);

BENCHMARK_MAIN();
