// Copyright 2026 The bidauction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "bidauction/alloc.hpp"
#include "bidauction/opt.hpp"
#include "bidauction/random.hpp"
#include "bidauction/resample.hpp"
#include "bidauction/ucb.hpp"

namespace {

using namespace bidauction;

struct Market {
  MarketConfig config;
  std::vector<double> qualities;
  std::vector<Bid> bids;
};

Market make_market(int agents, int units) {
  Rng rng(42);
  std::vector<TypeDistribution> dists(static_cast<std::size_t>(agents),
                                      TypeDistribution::uniform({0.0, 1.0}, {1, units}));
  Market m{MarketConfig(units, 30.0, std::move(dists)), {}, {}};
  for (int i = 0; i < agents; ++i) {
    m.qualities.push_back(0.5 + 0.5 * uniform01(rng));
    m.bids.push_back({uniform01(rng), 1 + static_cast<int>(uniform01(rng) * units)});
  }
  return m;
}

void BM_AllocGreedy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  AllocationInput input;
  for (std::size_t i = 0; i < n; ++i) {
    input.scores.push_back(uniform01(rng) - 0.2);
    input.capacities.push_back(1 + static_cast<int>(uniform01(rng) * 100));
  }
  input.budget = static_cast<int>(25 * n);
  for (auto _ : state) benchmark::DoNotOptimize(alloc_greedy(input));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AllocGreedy)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oNLogN);

void BM_Run2dOpt(benchmark::State& state) {
  const Market m = make_market(static_cast<int>(state.range(0)), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(run_2d_opt(m.config, m.qualities, m.bids));
}
BENCHMARK(BM_Run2dOpt)->Arg(5)->Arg(20)->Arg(100);

void BM_ResampleBids(benchmark::State& state) {
  const Market m = make_market(5, 1000);
  const std::vector<CostRange> bounds(5, CostRange{0.0, 1.0});
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(resample_bids(m.bids, bounds, TransformParams(0.1), rng));
}
BENCHMARK(BM_ResampleBids);

void BM_Run2dUcb(benchmark::State& state) {
  const int units = static_cast<int>(state.range(0));
  const Market m = make_market(5, units);
  const RewardRealization table = sample_reward_realization(m.qualities, units, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_2d_ucb(m.config, m.bids, table, TransformParams(0.1), ++seed));
  }
  state.SetItemsProcessed(state.iterations() * units);
}
BENCHMARK(BM_Run2dUcb)->Arg(1000)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
