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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bidauction/model.hpp"
#include "bidauction/opt.hpp"
#include "bidauction/resample.hpp"

namespace bidauction {

/// Exploration bonus used right after the one-unit-per-agent initialization.
enum class InitialBonus {
  kLoopForm,     // sqrt(2 ln t / n_i), same as inside the loop
  kHalfLogForm,  // sqrt(ln t / (2 n_i))
};

/// When the exploration bonus of each agent is evaluated.
enum class IndexUpdate {
  kEveryRound,  // every eligible agent at the current round t
  kOnPull,      // only the chosen agent, at the round it is pulled
};

struct UcbOptions {
  InitialBonus initial_bonus = InitialBonus::kLoopForm;
  IndexUpdate index_update = IndexUpdate::kEveryRound;
};

/// q + sqrt(2 ln(t) / n); 1 for an agent with no observations.
double compute_ucb_index(double mean, int pulls, int round);

struct UcbState {
  std::vector<int> pulls;
  std::vector<int> successes;
  std::vector<double> mean;
  std::vector<double> index;
  int round = 0;  // units procured so far
};

/// One procured unit, or a stop decision (agent == -1).
struct TraceStep {
  int round = 0;  // units procured before this step
  int agent = -1;
  int reward = 0;
  double g_hat = 0.0;
};

struct RunTrace {
  std::vector<TraceStep> steps;
};

/// CSV with header `round,agent,reward,g_hat`.
void write_trace_csv(const RunTrace& trace, std::ostream& out);
RunTrace read_trace_csv(std::istream& in);

struct LearningRun {
  MechanismOutcome outcome;  // auctioneer_utility uses realized rewards
  RunTrace trace;
  std::vector<ResampleDraw> draws;
  UcbState state;
  std::vector<std::string> warnings;
};

/// The UCB learning mechanism on resampled bids `draws`: one unit per agent
/// first, then one unit per round to the eligible agent with the largest
/// R q_hat^+ - H(alpha); the first non-positive value ends the auction.
/// Every agent is paid its bid cost per unit plus the resampling premium.
LearningRun run_2d_ucb(const MarketConfig& config, std::span<const Bid> bids,
                       const RewardRealization& realization, std::span<const ResampleDraw> draws,
                       TransformParams params, UcbOptions options = {});

/// Same, drawing the resampled bids from `seed`.
LearningRun run_2d_ucb(const MarketConfig& config, std::span<const Bid> bids,
                       const RewardRealization& realization, TransformParams params,
                       std::uint64_t seed, UcbOptions options = {});

/// Explore-then-commit baseline: `explore_rounds` units round-robin, then the
/// frozen empirical qualities drive the greedy allocation of the remaining
/// budget on the resampled costs. Payments follow the same transformation as
/// the UCB mechanism on every unit.
LearningRun run_eps_separated(const MarketConfig& config, std::span<const Bid> bids,
                              const RewardRealization& realization, int explore_rounds,
                              std::span<const ResampleDraw> draws, TransformParams params);

LearningRun run_eps_separated(const MarketConfig& config, std::span<const Bid> bids,
                              const RewardRealization& realization, int explore_rounds,
                              TransformParams params, std::uint64_t seed);

/// round(L^exponent), raised to at least `agents` and capped at L.
int eps_explore_rounds(int units, double exponent, int agents);

}  // namespace bidauction
