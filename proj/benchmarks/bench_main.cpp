#include <benchmark/benchmark.h>

#include "hkq/levelset.hpp"
#include "hkq/verify.hpp"

using namespace hkq;

static void BM_AdmissibleEnumeration(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_admissible_triples(state.range(0)));
}
BENCHMARK(BM_AdmissibleEnumeration)->Arg(30)->Arg(101);

static void BM_ParityObstruction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_parity_obstruction(state.range(0)));
}
BENCHMARK(BM_ParityObstruction)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_ConstraintJacobian(benchmark::State& state) {
  const auto spec = LevelSetSpec::theta({{1, 0, 1}, {0, 1, 1}});
  const auto u = random_start(spec, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(constraint_jacobian(u, spec));
}
BENCHMARK(BM_ConstraintJacobian);

static void BM_Projection(benchmark::State& state) {
  const auto spec = LevelSetSpec::triple({{1, 2, 3}});
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(project_to_level_set(random_start(spec, 42, i++), spec));
}
BENCHMARK(BM_Projection)->Unit(benchmark::kMicrosecond);

static void BM_Sampling(benchmark::State& state) {
  const auto spec = LevelSetSpec::quad({{0, 1, 2, 3}});
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_level_set(spec, 100, 42, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Sampling)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_NumericalRank(benchmark::State& state) {
  const auto spec = LevelSetSpec::triple({{1, 2, 3}});
  const auto j = constraint_jacobian(random_start(spec, 3, 0), spec);
  for (auto _ : state) benchmark::DoNotOptimize(numerical_rank(j, 1e-6));
}
BENCHMARK(BM_NumericalRank);

static void BM_VertexScan(benchmark::State& state) {
  const auto spec = LevelSetSpec::triple({{1, 2, 3}});
  for (auto _ : state) benchmark::DoNotOptimize(vertex_support_scan(spec, 1e-12, 20, 42));
}
BENCHMARK(BM_VertexScan)->Unit(benchmark::kMillisecond);

static void BM_OrbitMaxCalibration(benchmark::State& state) {
  const auto spec = LevelSetSpec::triple({{1, 1, 1}});
  const auto pt = project_to_level_set(random_start(spec, 5, 0), spec);
  const auto& conv = default_convention();
  for (auto _ : state) benchmark::DoNotOptimize(orbit_max_calibration(pt.u, conv));
}
BENCHMARK(BM_OrbitMaxCalibration);

static void BM_Calibration(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(calibrate_convention(1000, 42));
}
BENCHMARK(BM_Calibration)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
