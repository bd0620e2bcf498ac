#include <benchmark/benchmark.h>

#include <map>

#include <crstab/extremals.hpp>
#include <crstab/yamabe.hpp>
#include <crstab/hls.hpp>

using namespace crstab;

namespace {

ContextPtr bench_ctx(int D) {
  static std::map<int, ContextPtr> cache;
  auto& slot = cache[D];
  if (!slot) slot = SphereContext::make(1, D);
  return slot;
}

void BM_BasisBuild(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(HarmonicBasis::build(1, D));
  }
}
BENCHMARK(BM_BasisBuild)->Arg(4)->Arg(6)->Arg(8);

void BM_GridProjection(benchmark::State& state) {
  const auto ctx = bench_ctx(static_cast<int>(state.range(0)));
  Eigen::VectorXcd nodes = Eigen::VectorXcd::Constant(ctx->num_nodes(), Complex(1.0, 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SpectralField::project_nodes(ctx, nodes));
  }
}
BENCHMARK(BM_GridProjection)->Arg(6)->Arg(8);

void BM_FlowStep(benchmark::State& state) {
  const auto ctx = bench_ctx(static_cast<int>(state.range(0)));
  const SpectralField u0 =
      SpectralField::constant(ctx, 1.0) + real_harmonic(ctx, 2, 0, 0) * 0.3;
  const FlowOptions opts;
  const double s0 = total_curvature(u0);
  const double dt = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow_step({u0, 0.0}, dt, opts, s0));
  }
}
BENCHMARK(BM_FlowStep)->Arg(6)->Arg(8);

void BM_DistanceObjective(benchmark::State& state) {
  const auto ctx = bench_ctx(6);
  const SpectralField u =
      SpectralField::constant(ctx, 1.0) + real_harmonic(ctx, 2, 0, 0) * 0.2;
  DistanceOptions opts;
  opts.restarts = 1;
  opts.max_evals = 60;
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance_to_sobolev_manifold(u, opts));
  }
}
BENCHMARK(BM_DistanceObjective);

void BM_KernelEigenvalueTable(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_spectrum(0.5, 1, 16));
  }
}
BENCHMARK(BM_KernelEigenvalueTable);

}  // namespace

BENCHMARK_MAIN();
