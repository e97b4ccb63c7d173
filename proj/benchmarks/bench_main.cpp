#include <benchmark/benchmark.h>

#include <vector>

#include "aoip/multi_path.hpp"
#include "aoip/single_path.hpp"

namespace {

aoip::SinglePathProblem single_instance(int horizon) {
  return aoip::SinglePathProblem::make(horizon, 5, 0.85, aoip::ArrivalChain{0.8, 0.6},
                                       aoip::CostDistribution::uniform(), 5e-6);
}

std::vector<int> sweep_delays(int n) {
  std::vector<int> out;
  static const int pat[4] = {2, 3, 4, 5};
  for (int i = 0; i < n; ++i) out.push_back(i < 3 ? (i == 2 ? 5 : pat[i]) : pat[(i - 3) % 4]);
  return out;
}

aoip::MultiPathProblem multi_instance(int lookahead, int n_paths) {
  return aoip::MultiPathProblem::make(lookahead + 5, sweep_delays(n_paths), 0.85,
                                      aoip::ArrivalChain{0.8, 0.6},
                                      aoip::CostDistribution::uniform(), 5e-6);
}

void bm_lookup_table(benchmark::State& state) {
  aoip::SinglePathProblem p = single_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_lookup_table(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_lookup_table)->RangeMultiplier(2)->Range(50, 800)->Complexity();

void bm_online_price(benchmark::State& state) {
  aoip::SinglePathProblem p = single_instance(static_cast<int>(state.range(0)));
  aoip::LookupTable table = build_lookup_table(p);
  for (auto _ : state)
    benchmark::DoNotOptimize(optimal_price_online(p, 0, 9, 0, table));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_online_price)->RangeMultiplier(2)->Range(50, 800)->Complexity();

void bm_approx_price(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  aoip::MultiPathProblem p = multi_instance(k, n);
  std::vector<double> aoi;
  for (int i = 0; i < n; ++i) aoi.push_back(4.0 + (i % 3));
  aoip::MultiPathState st{aoi, -1, 0};
  for (auto _ : state) benchmark::DoNotOptimize(approx_price_online(p, 0, st));
  state.SetComplexityN(k);
}
BENCHMARK(bm_approx_price)
    ->ArgsProduct({{20, 40, 80, 160}, {3, 50}})
    ->Complexity();

}  // namespace

BENCHMARK_MAIN();
