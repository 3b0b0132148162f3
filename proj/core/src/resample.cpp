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

#include "bidauction/resample.hpp"

#include <algorithm>
#include <stdexcept>

namespace bidauction {

namespace {

// Expected depth is 1 / (1 - mu).
constexpr long kMaxResampleSteps = 1'000'000;

template <class Engine>
double jump_up(double from, double hi, Engine& rng) {
  // 1 - u lies in (0, 1].
  const double u = 1.0 - uniform01(rng);
  return std::min(hi, from + u * (hi - from));
}

template <class Engine>
ResampleDraw resample_with(double bid_cost, CostRange bounds, TransformParams params, Engine& rng) {
  if (!bounds.contains(bid_cost)) throw std::out_of_range("bid cost outside its bounds");
  const double keep = 1.0 - params.mu();
  if (uniform01(rng) < keep) return {bid_cost, bid_cost};

  const double beta = jump_up(bid_cost, bounds.hi, rng);
  double alpha = beta;
  for (long step = 0;; ++step) {
    if (step >= kMaxResampleSteps) throw std::logic_error("self-resampling failed to terminate");
    if (uniform01(rng) < keep) break;
    alpha = jump_up(alpha, bounds.hi, rng);
  }
  return {alpha, beta};
}

}  // namespace

TransformParams::TransformParams(double mu) : mu_(mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("mu must lie in (0, 1)");
}

ResampleDraw self_resample(double bid_cost, CostRange bounds, TransformParams params, Rng& rng) {
  return resample_with(bid_cost, bounds, params, rng);
}

ResampleDraw self_resample(double bid_cost, CostRange bounds, TransformParams params,
                           SplitMix64& rng) {
  return resample_with(bid_cost, bounds, params, rng);
}

ResampleDraw self_resample(double bid_cost, CostRange bounds, TransformParams params,
                           std::uint64_t seed) {
  SplitMix64 rng(seed);
  return resample_with(bid_cost, bounds, params, rng);
}

std::vector<ResampleDraw> resample_bids(std::span<const Bid> bids,
                                        std::span<const CostRange> bounds, TransformParams params,
                                        Rng& rng) {
  if (bids.size() != bounds.size()) throw std::invalid_argument("one cost range per bid required");
  std::vector<ResampleDraw> draws;
  draws.reserve(bids.size());
  for (std::size_t i = 0; i < bids.size(); ++i) {
    draws.push_back(self_resample(bids[i].cost, bounds[i], params, rng()));
  }
  return draws;
}

double transformation_premium(int units, TransformParams params, double resampler_density) {
  if (!(resampler_density > 0.0)) throw std::invalid_argument("resampler density must be > 0");
  return units / (params.mu() * resampler_density);
}

double resampling_premium(int units, const ResampleDraw& draw, double bid_cost, CostRange bounds,
                          TransformParams params) {
  if (!(draw.beta > bid_cost) || units == 0) return 0.0;
  return transformation_premium(units, params, 1.0 / (bounds.hi - bid_cost));
}

TransformedOutcome transform_allocate_and_pay(const AllocationRule& rule, std::span<const Bid> bids,
                                              std::span<const CostRange> bounds,
                                              TransformParams params, Rng& rng,
                                              std::span<const double> reward_per_unit) {
  const std::size_t n = bids.size();
  if (!reward_per_unit.empty() && reward_per_unit.size() != n) {
    throw std::invalid_argument("reward_per_unit must be empty or one entry per agent");
  }
  TransformedOutcome out;
  out.draws = resample_bids(bids, bounds, params, rng);

  std::vector<double> alphas(n);
  std::vector<int> caps(n);
  for (std::size_t i = 0; i < n; ++i) {
    alphas[i] = out.draws[i].alpha;
    caps[i] = bids[i].capacity;
  }
  out.outcome.allocation.units = rule(alphas, caps);
  if (out.outcome.allocation.units.size() != n) {
    throw std::logic_error("allocation rule returned the wrong number of agents");
  }

  out.outcome.payments.resize(n);
  double utility = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int x = out.outcome.allocation.units[i];
    out.outcome.payments[i] =
        bids[i].cost * x + resampling_premium(x, out.draws[i], bids[i].cost, bounds[i], params);
    utility -= out.outcome.payments[i];
    if (!reward_per_unit.empty()) utility += x * reward_per_unit[i];
  }
  out.outcome.auctioneer_utility = utility;
  return out;
}

}  // namespace bidauction
