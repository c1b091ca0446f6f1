#include <benchmark/benchmark.h>

#include <random>

#include "cotrack/metrics.hpp"
#include "cotrack/radio.hpp"
#include "cotrack/replay.hpp"

namespace {

using namespace cotrack;

std::vector<GeoPoint> wander(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, 5e-6);
  std::vector<GeoPoint> out{{46.5191, 6.5668}};
  while (out.size() < n) out.push_back({out.back().lat + step(rng), out.back().lon + step(rng)});
  return out;
}

void BM_Haversine(benchmark::State& state) {
  const auto pts = wander(1024, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(haversine(pts[i & 1023], pts[(i + 1) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_Haversine);

void BM_IntermediatePoint(benchmark::State& state) {
  const auto pts = wander(1024, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(intermediate_point(pts[i & 1023], pts[(i + 7) & 1023], 0.37));
    ++i;
  }
}
BENCHMARK(BM_IntermediatePoint);

void BM_Dfd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = wander(n, 3);
  const auto q = wander(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(dfd(p, q));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Dfd)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

void BM_PayloadRoundTrip(benchmark::State& state) {
  AdvertisementPayload p{46.5191, 6.5668, 42};
  for (auto _ : state) {
    const auto bytes = encode(p);
    benchmark::DoNotOptimize(p = decode(bytes));
  }
}
BENCHMARK(BM_PayloadRoundTrip);

void BM_ReplayDense(benchmark::State& state) {
  SyntheticParams params;
  params.device_count = static_cast<std::size_t>(state.range(0));
  const Scenario sc = generate_synthetic(params);
  for (auto _ : state) benchmark::DoNotOptimize(run(sc));
}
BENCHMARK(BM_ReplayDense)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
