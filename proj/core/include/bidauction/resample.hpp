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

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bidauction/model.hpp"
#include "bidauction/opt.hpp"
#include "bidauction/random.hpp"

namespace bidauction {

/// Modified bid pair; always cost_hi >= alpha >= beta >= bid cost.
struct ResampleDraw {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Resampling probability mu, strictly inside (0, 1).
class TransformParams {
 public:
  explicit TransformParams(double mu);
  double mu() const { return mu_; }

 private:
  double mu_;
};

/// Self-resampling of one bid. With probability 1 - mu returns (c, c);
/// otherwise beta is uniform on [c, c_hi] and alpha continues from beta by
/// repeatedly jumping uniformly upward, stopping with probability 1 - mu at
/// each step.
///
/// The number of generator draws consumed does not depend on `bid_cost`, so
/// two calls with equal generator state are coupled and monotone in the bid.
ResampleDraw self_resample(double bid_cost, CostRange bounds, TransformParams params, Rng& rng);
ResampleDraw self_resample(double bid_cost, CostRange bounds, TransformParams params,
                           SplitMix64& rng);
/// Runs on a SplitMix64 stream started at `seed`.
ResampleDraw self_resample(double bid_cost, CostRange bounds, TransformParams params,
                           std::uint64_t seed);

/// One draw per agent; agent i uses its own SplitMix64 stream seeded from
/// `rng`.
std::vector<ResampleDraw> resample_bids(std::span<const Bid> bids,
                                        std::span<const CostRange> bounds, TransformParams params,
                                        Rng& rng);

/// General premium (1 / mu) * units / F'(beta), where F' is the density of
/// the resampler's beta conditional on beta > bid.
double transformation_premium(int units, TransformParams params, double resampler_density);

/// Premium paid to an agent after resampling; zero when beta == bid cost.
/// Uses the uniform resampler density 1 / (c_hi - bid).
double resampling_premium(int units, const ResampleDraw& draw, double bid_cost, CostRange bounds,
                          TransformParams params);

/// Allocation rule evaluated on (possibly modified) costs and reported
/// capacities.
using AllocationRule =
    std::function<std::vector<int>(std::span<const double> costs, std::span<const int> capacities)>;

struct TransformedOutcome {
  MechanismOutcome outcome;
  std::vector<ResampleDraw> draws;
};

/// Runs `rule` on the resampled costs alpha and pays every agent its bid cost
/// per unit plus the resampling premium. `reward_per_unit` (R q_i), when
/// given, is used to fill in the auctioneer's utility.
TransformedOutcome transform_allocate_and_pay(const AllocationRule& rule, std::span<const Bid> bids,
                                              std::span<const CostRange> bounds,
                                              TransformParams params, Rng& rng,
                                              std::span<const double> reward_per_unit = {});

}  // namespace bidauction
