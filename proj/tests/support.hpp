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

#pragma once

#include <cmath>
#include <vector>

#include "bidauction/model.hpp"
#include "bidauction/random.hpp"

namespace bidauction::testing {

// f(c) proportional to exp(rate * c) on [0, 1]; regular for every rate > 0.
inline TypeDistribution increasing_exponential(double rate, CapacityRange caps) {
  const double norm = std::expm1(rate);
  return TypeDistribution::custom(
      {0.0, 1.0}, caps,
      [=](double c, int k) {
        return caps.contains(k) ? rate * std::exp(rate * c) / norm / (caps.hi - caps.lo + 1.0) : 0.0;
      },
      [=](double c, int) { return std::expm1(rate * c) / norm; },
      [=](double c, int) { return rate * std::exp(rate * c) / norm; });
}

// Half uniform, half steep increasing exponential on [0, 1]. The density
// rises so quickly near 1 that H decreases there.
inline TypeDistribution irregular_mixture(CapacityRange caps, double rate = 50.0) {
  const double norm = std::expm1(rate);
  auto cdf = [=](double c, int) { return 0.5 * c + 0.5 * std::expm1(rate * c) / norm; };
  auto pdf = [=](double c, int) { return 0.5 + 0.5 * rate * std::exp(rate * c) / norm; };
  return TypeDistribution::custom(
      {0.0, 1.0}, caps, [=](double c, int k) { return pdf(c, k) / (caps.hi - caps.lo + 1.0); }, cdf, pdf);
}

// f(c | k) proportional to exp(-rate(k) c) on [0, 1] with rate(k) = scale / k.
// F/f = expm1(rate c) / rate grows with the rate, so H falls as k rises.
inline TypeDistribution capacity_dependent(CapacityRange caps, double scale = 3.0, bool reversed = false) {
  auto rate = [=](int k) { return reversed ? scale * k : scale / k; };
  auto cdf = [=](double c, int k) { return -std::expm1(-rate(k) * c) / -std::expm1(-rate(k)); };
  auto pdf = [=](double c, int k) { return rate(k) * std::exp(-rate(k) * c) / -std::expm1(-rate(k)); };
  return TypeDistribution::custom(
      {0.0, 1.0}, caps, [=](double c, int k) { return pdf(c, k) / (caps.hi - caps.lo + 1.0); }, cdf, pdf);
}

// Uniform cost law routed through the numeric code path.
inline TypeDistribution numeric_uniform(CostRange costs, CapacityRange caps) {
  const double w = costs.width();
  return TypeDistribution::custom(
      costs, caps, [=](double c, int) { return costs.contains(c) ? 1.0 / w / (caps.hi - caps.lo + 1.0) : 0.0; },
      [=](double c, int) { return (c - costs.lo) / w; }, [=](double, int) { return 1.0 / w; });
}

struct RandomInstance {
  MarketConfig market;
  std::vector<double> qualities;
  std::vector<Bid> bids;
};

// Independent uniform costs on [0, 1] and capacities on [1, max_capacity].
inline RandomInstance random_instance(Rng& rng, int agents, int max_capacity, int units, double reward) {
  std::vector<TypeDistribution> dists(static_cast<std::size_t>(agents),
                                      TypeDistribution::uniform({0.0, 1.0}, {1, max_capacity}));
  RandomInstance inst{MarketConfig(units, reward, dists), {}, {}};
  for (int i = 0; i < agents; ++i) {
    inst.qualities.push_back(uniform01(rng));
    inst.bids.push_back({uniform01(rng), 1 + static_cast<int>(uniform01(rng) * max_capacity)});
  }
  return inst;
}

}  // namespace bidauction::testing
