#include <benchmark/benchmark.h>

#include "barw/exact_solver.hpp"

namespace {

void BM_HittingProfileWindow(benchmark::State& state) {
  const barw::ModelParams p(1.5, static_cast<int>(state.range(0)));
  const int u = barw::threshold_u(p, 0.05, barw::LevelMode::window);
  for (auto _ : state) benchmark::DoNotOptimize(barw::hitting_profile(p, u));
  state.counters["u"] = u;
}
BENCHMARK(BM_HittingProfileWindow)->Arg(300)->Arg(600)->Arg(1200)->Unit(benchmark::kMillisecond);

void BM_HittingProfileNative(benchmark::State& state) {
  const barw::ModelParams p(2.0, 200);
  for (auto _ : state)
    benchmark::DoNotOptimize(barw::hitting_profile(p, 60, barw::SolveMethod::dense_native));
}
BENCHMARK(BM_HittingProfileNative)->Unit(benchmark::kMillisecond);

void BM_TiltedKernelAndTimes(benchmark::State& state) {
  const barw::ModelParams p(6.0, 1200);
  const auto prof = barw::hitting_profile(p, 299);
  for (auto _ : state) {
    const auto k = barw::tilted_kernel(prof);
    benchmark::DoNotOptimize(barw::conditional_expected_extinction(k));
  }
}
BENCHMARK(BM_TiltedKernelAndTimes)->Unit(benchmark::kMillisecond);

void BM_UnconditionalTime(benchmark::State& state) {
  const barw::ModelParams p(2.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(barw::unconditional_expected_extinction(p));
}
BENCHMARK(BM_UnconditionalTime)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace
