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

#include <span>
#include <vector>

#include "bidauction/alloc.hpp"
#include "bidauction/model.hpp"

namespace bidauction {

/// Allocation, payments and the auctioneer's utility for the reward model
/// that produced them (expected rewards R q for the omniscient mechanism,
/// realized rewards for learning runs unless repriced).
struct MechanismOutcome {
  Allocation allocation;
  std::vector<double> payments;
  double auctioneer_utility = 0.0;
};

/// Scores G_i = R q_i - H_i(bid cost, bid capacity) for every agent.
std::vector<double> opt_scores(const MarketConfig& config, std::span<const double> qualities,
                               std::span<const Bid> bids);

/// The omniscient optimal mechanism: greedy allocation on G scores and, for
/// every winner, per-unit threshold prices read off the allocation the other
/// agents would receive on their residual capacities.
///
/// Units that no competitor could absorb are priced at the highest cost at
/// which the winner still has a non-negative score (c_hi when G(c_hi) >= 0).
MechanismOutcome run_2d_opt(const MarketConfig& config, std::span<const double> qualities,
                            std::span<const Bid> bids);

/// c_i x_i + integral over z in [c_i, c_hi] of x_i(z, k_i, b_-i), evaluated
/// exactly on the step function of x_i by re-running the allocation between
/// consecutive breakpoints.
double opt_payment_integral_oracle(const MarketConfig& config, std::span<const double> qualities,
                                   std::span<const Bid> bids, int agent);

/// Units agent `agent` would win under the greedy rule if it bid `cost`.
int opt_units_at_cost(const MarketConfig& config, std::span<const double> qualities,
                      std::span<const Bid> bids, int agent, double cost);

/// sum_i (x_i R q_i - t_i).
double auctioneer_utility(const MechanismOutcome& outcome, std::span<const double> qualities,
                          double reward_scale);

}  // namespace bidauction
