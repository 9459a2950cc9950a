#include <benchmark/benchmark.h>

#include "darkstore/geo.hpp"
#include "darkstore/placer.hpp"
#include "darkstore/popgen.hpp"
#include "darkstore/router.hpp"

namespace {

using namespace darkstore;

const MapBounds kMap{{0, 0}, {100, 100}};
const TrafficModel kZones = TrafficModel::zoned({50, 50}, {20, 40}, {3, 2, 1});

void BM_TravelTime(benchmark::State& state) {
  const auto pts = generate_uniform(kMap, 256, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        travel_time(kZones, pts[i % 256].location, pts[(i * 7 + 3) % 256].location));
    ++i;
  }
}
BENCHMARK(BM_TravelTime);

void BM_EvaluateDepot(benchmark::State& state) {
  const auto customers = generate_uniform(kMap, static_cast<std::size_t>(state.range(0)), 2);
  const RoutingParams routing{30, 3, 5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_depot({50, 50}, customers, kZones, routing));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateDepot)->RangeMultiplier(2)->Range(50, 400)->Complexity();

void BM_FindBestLocation(benchmark::State& state) {
  const auto customers = generate_gaussian(kMap, static_cast<std::size_t>(state.range(0)), 20, 3);
  SearchParams search;
  search.n_warehouses = 1;
  search.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_best_location(customers, kMap, kZones, {30, 3, 5}, search));
  }
}
BENCHMARK(BM_FindBestLocation)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
