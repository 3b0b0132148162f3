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

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "bidauction/harness.hpp"
#include "bidauction/opt.hpp"
#include "bidauction/parallel.hpp"
#include "bidauction/random.hpp"
#include "bidauction/stats.hpp"

namespace bidauction {

namespace {

// Draw-independent part of a type sample; capacities are rescaled per L.
struct TypeSample {
  std::vector<double> quality;
  std::vector<double> cost;
  std::vector<double> capacity_quantile;
};

TypeSample draw_type_sample(const ExperimentConfig& cfg, std::size_t index) {
  Rng rng(derive_seed(cfg.seed, {index, 0}));
  TypeSample s;
  for (int i = 0; i < cfg.agents; ++i) {
    const CostRange c = cfg.distribution_for(i).cost;
    s.quality.push_back(cfg.quality_lo + (cfg.quality_hi - cfg.quality_lo) * uniform01(rng));
    s.cost.push_back(c.lo + c.width() * uniform01(rng));
    s.capacity_quantile.push_back(uniform01(rng));
  }
  return s;
}

int scaled_capacity(CapacityRange caps, double quantile) {
  const double span = static_cast<double>(caps.hi) - caps.lo + 1.0;
  return std::min(caps.hi, caps.lo + static_cast<int>(std::floor(quantile * span)));
}

}  // namespace

std::string eps_label(double exponent) {
  std::ostringstream os;
  os.precision(4);
  os << "eps-separated(L^" << exponent << ")";
  return os.str();
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const int n = config.agents;
  const std::size_t mechanisms = 2 + config.eps_exponents.size();
  const auto samples = static_cast<std::size_t>(config.type_samples);
  const TransformParams params(config.mu);

  std::vector<TypeSample> types;
  types.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) types.push_back(draw_type_sample(config, s));

  std::vector<ResultRow> rows(mechanisms * config.units.size());
  for (std::size_t li = 0; li < config.units.size(); ++li) {
    const int units = config.units[li];
    const CapacityRange caps = config.capacity_bounds(units);
    std::vector<TypeDistribution> dists;
    for (int i = 0; i < n; ++i) dists.push_back(TypeDistribution::uniform(config.distribution_for(i).cost, caps));
    const MarketConfig market(units, config.reward_scale, dists);
    std::vector<int> explore;
    for (double e : config.eps_exponents) explore.push_back(eps_explore_rounds(units, e, n));

    // per_sample[s][m] = mean over realizations of utility per unit.
    std::vector<std::vector<double>> per_sample(samples, std::vector<double>(mechanisms, 0.0));
    std::vector<char> infeasible(samples, 0);

    parallel_for(samples, config.threads, [&](std::size_t s) {
      const TypeSample& ts = types[s];
      std::vector<Bid> bids;
      long total_capacity = 0;
      for (int i = 0; i < n; ++i) {
        const int k = scaled_capacity(caps, ts.capacity_quantile[static_cast<std::size_t>(i)]);
        bids.push_back({ts.cost[static_cast<std::size_t>(i)], k});
        total_capacity += k;
      }
      infeasible[s] = total_capacity < units ? 1 : 0;

      std::vector<double>& out = per_sample[s];
      out[0] = run_2d_opt(market, ts.quality, bids).auctioneer_utility / units;

      std::vector<double> sums(mechanisms, 0.0);
      for (int r = 0; r < config.realizations; ++r) {
        const std::uint64_t stream =
            derive_seed(config.seed, {s, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(units)});
        const RewardRealization realization =
            sample_reward_realization(ts.quality, units, derive_seed(stream, {1}));
        const std::uint64_t resample_seed = derive_seed(stream, {2});

        const LearningRun ucb = run_2d_ucb(market, bids, realization, params, resample_seed,
                                           config.ucb);
        sums[1] += auctioneer_utility(ucb.outcome, ts.quality, config.reward_scale) / units;
        for (std::size_t e = 0; e < explore.size(); ++e) {
          const LearningRun eps =
              run_eps_separated(market, bids, realization, explore[e], params, resample_seed);
          sums[2 + e] += auctioneer_utility(eps.outcome, ts.quality, config.reward_scale) / units;
        }
      }
      for (std::size_t m = 1; m < mechanisms; ++m) out[m] = sums[m] / config.realizations;
    });

    long flagged = 0;
    for (char f : infeasible) flagged += f;
    if (flagged > 0) {
      std::cerr << "warning: L=" << units << ": " << flagged << " of " << samples
                << " type samples have total capacity below L\n";
    }
    for (std::size_t m = 0; m < mechanisms; ++m) {
      RunningStats stats;
      for (std::size_t s = 0; s < samples; ++s) stats.add(per_sample[s][m]);
      ResultRow& row = rows[m * config.units.size() + li];
      row.mechanism = m == 0 ? kOptLabel : m == 1 ? kUcbLabel : eps_label(config.eps_exponents[m - 2]);
      row.units = units;
      row.mean_utility_per_unit = stats.mean();
      row.standard_error = stats.standard_error();
      row.replications = static_cast<long>(samples) * config.realizations;
      row.infeasible_samples = flagged;
    }
  }
  return rows;
}

}  // namespace bidauction
