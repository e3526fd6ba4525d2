#include <benchmark/benchmark.h>

#include "barw/samplers.hpp"
#include "barw/simulator.hpp"

namespace {

void BM_Binomial(benchmark::State& state) {
  auto rng = barw::stream_for(1, 0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(barw::sample_binomial(rng, n, 0.27));
}
BENCHMARK(BM_Binomial)->Arg(20)->Arg(1200)->Arg(100000);

void BM_Poisson(benchmark::State& state) {
  auto rng = barw::stream_for(1, 1);
  const double mean = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(barw::sample_poisson(rng, mean));
}
BENCHMARK(BM_Poisson)->Arg(2)->Arg(100);

void BM_EstimateHitting(benchmark::State& state) {
  const barw::ModelParams p(2.0, 50);
  for (auto _ : state)
    benchmark::DoNotOptimize(barw::estimate_hitting_prob(p, 10, 3, 10000, 7, 1));
}
BENCHMARK(BM_EstimateHitting)->Unit(benchmark::kMillisecond);

void BM_ParticleStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = barw::complete_graph(n, true);
  const auto start = barw::initial_particles(g, n / 3);
  auto rng = barw::stream_for(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(barw::step_particle(g, start, 2.0, rng));
}
BENCHMARK(BM_ParticleStep)->Arg(30)->Arg(1200);

}  // namespace
