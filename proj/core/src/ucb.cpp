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

#include "bidauction/ucb.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bidauction {

namespace {

void validate_run(const MarketConfig& config, std::span<const Bid> bids,
                  const RewardRealization& realization, std::span<const ResampleDraw> draws) {
  const auto n = static_cast<std::size_t>(config.agents());
  if (bids.size() != n || draws.size() != n) {
    throw std::invalid_argument("bids and draws must have one entry per agent");
  }
  if (realization.agents() != config.agents() || realization.units() < config.units()) {
    throw std::invalid_argument("realization table must be at least n x L");
  }
  if (!config.regular()) {
    throw IrregularDistributionError("learning mechanisms require regular type distributions");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const TypeDistribution& d = config.distribution(static_cast<int>(i));
    if (!d.cost_bounds().contains(bids[i].cost)) throw std::out_of_range("bid cost out of bounds");
    if (!d.capacity_bounds().contains(bids[i].capacity)) {
      throw std::out_of_range("bid capacity out of bounds");
    }
    const ResampleDraw& r = draws[i];
    if (!(d.cost_bounds().hi >= r.alpha && r.alpha >= r.beta && r.beta >= bids[i].cost)) {
      throw std::invalid_argument("resample draw violates c_hi >= alpha >= beta >= bid");
    }
  }
}

std::vector<ResampleDraw> draw_for(const MarketConfig& config, std::span<const Bid> bids,
                                   TransformParams params, std::uint64_t seed) {
  std::vector<CostRange> bounds;
  for (const TypeDistribution& d : config.distributions()) bounds.push_back(d.cost_bounds());
  Rng rng(seed);
  return resample_bids(bids, bounds, params, rng);
}

UcbState empty_state(std::size_t n) {
  UcbState s;
  s.pulls.assign(n, 0);
  s.successes.assign(n, 0);
  s.mean.assign(n, 0.0);
  s.index.assign(n, 1.0);
  return s;
}

void settle(const MarketConfig& config, std::span<const Bid> bids, TransformParams params,
            LearningRun& run) {
  const std::size_t n = bids.size();
  run.outcome.allocation.units = run.state.pulls;
  run.outcome.payments.assign(n, 0.0);
  double utility = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int units = run.state.pulls[i];
    const CostRange bounds = config.distribution(static_cast<int>(i)).cost_bounds();
    run.outcome.payments[i] =
        bids[i].cost * units + resampling_premium(units, run.draws[i], bids[i].cost, bounds, params);
    utility += config.reward_scale() * run.state.successes[i] - run.outcome.payments[i];
  }
  run.outcome.auctioneer_utility = utility;
}

int observe(const RewardRealization& realization, std::size_t agent, UcbState& state) {
  const int reward = realization.at(static_cast<int>(agent), state.pulls[agent]);
  state.pulls[agent] += 1;
  state.successes[agent] += reward;
  state.mean[agent] = static_cast<double>(state.successes[agent]) / state.pulls[agent];
  state.round += 1;
  return reward;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double compute_ucb_index(double mean, int pulls, int round) {
  if (pulls <= 0) return 1.0;
  if (round < 1) throw std::invalid_argument("round must be >= 1");
  return mean + std::sqrt(2.0 * std::log(static_cast<double>(round)) / pulls);
}

LearningRun run_2d_ucb(const MarketConfig& config, std::span<const Bid> bids,
                       const RewardRealization& realization, std::span<const ResampleDraw> draws,
                       TransformParams params, UcbOptions options) {
  const int units = config.units();
  if (units < config.agents()) {
    throw std::invalid_argument("2D-UCB needs L >= n to buy one unit from every agent");
  }
  validate_run(config, bids, realization, draws);
  const std::size_t n = bids.size();
  const double reward_scale = config.reward_scale();

  LearningRun run;
  run.draws.assign(draws.begin(), draws.end());
  run.state = empty_state(n);
  UcbState& st = run.state;

  std::vector<double> virtual_costs(n);
  for (std::size_t i = 0; i < n; ++i) {
    virtual_costs[i] =
        virtual_cost(config.distribution(static_cast<int>(i)), draws[i].alpha, bids[i].capacity);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (bids[i].capacity == 0) continue;
    const int round = st.round;
    const int reward = observe(realization, i, st);
    run.trace.steps.push_back(
        {round, static_cast<int>(i), reward, reward_scale * 1.0 - virtual_costs[i]});
  }
  const int init_round = std::max(st.round, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (st.pulls[i] == 0) continue;
    if (options.initial_bonus == InitialBonus::kHalfLogForm) {
      st.index[i] = st.mean[i] + std::sqrt(std::log(static_cast<double>(init_round)) / (2.0 * st.pulls[i]));
    } else {
      st.index[i] = compute_ucb_index(st.mean[i], st.pulls[i], init_round);
    }
  }

  while (st.round < units) {
    const int t = st.round;
    if (options.index_update == IndexUpdate::kEveryRound) {
      for (std::size_t j = 0; j < n; ++j) {
        if (st.pulls[j] == 0) continue;
        if (options.initial_bonus == InitialBonus::kHalfLogForm && st.pulls[j] == 1) {
          st.index[j] = st.mean[j] + std::sqrt(std::log(static_cast<double>(t)) / 2.0);
        } else {
          st.index[j] = compute_ucb_index(st.mean[j], st.pulls[j], t);
        }
      }
    }
    std::size_t best = n;
    double best_g = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (st.pulls[j] >= bids[j].capacity) continue;
      const double g = reward_scale * st.index[j] - virtual_costs[j];
      if (best == n || g > best_g) {
        best = j;
        best_g = g;
      }
    }
    if (best == n) break;  // every agent at its reported capacity
    if (!(best_g > 0.0)) {
      run.trace.steps.push_back({t, -1, 0, best_g});
      break;
    }
    const int reward = observe(realization, best, st);
    if (options.index_update == IndexUpdate::kOnPull) {
      st.index[best] = compute_ucb_index(st.mean[best], st.pulls[best], t);
    }
    run.trace.steps.push_back({t, static_cast<int>(best), reward, best_g});
  }

  settle(config, bids, params, run);
  return run;
}

LearningRun run_2d_ucb(const MarketConfig& config, std::span<const Bid> bids,
                       const RewardRealization& realization, TransformParams params,
                       std::uint64_t seed, UcbOptions options) {
  if (bids.size() != static_cast<std::size_t>(config.agents())) {
    throw std::invalid_argument("one bid per agent required");
  }
  const std::vector<ResampleDraw> draws = draw_for(config, bids, params, seed);
  return run_2d_ucb(config, bids, realization, draws, params, options);
}

LearningRun run_eps_separated(const MarketConfig& config, std::span<const Bid> bids,
                              const RewardRealization& realization, int explore_rounds,
                              std::span<const ResampleDraw> draws, TransformParams params) {
  const int units = config.units();
  if (explore_rounds > units) throw std::invalid_argument("explore_rounds must be <= L");
  if (explore_rounds < config.agents()) throw std::invalid_argument("explore_rounds must be >= n");
  validate_run(config, bids, realization, draws);
  const std::size_t n = bids.size();
  const double reward_scale = config.reward_scale();

  LearningRun run;
  run.draws.assign(draws.begin(), draws.end());
  run.state = empty_state(n);
  UcbState& st = run.state;

  long total_capacity = 0;
  for (const Bid& b : bids) total_capacity += b.capacity;
  int budget = explore_rounds;
  if (budget > total_capacity) {
    std::ostringstream msg;
    msg << "explore_rounds " << explore_rounds << " clipped to total capacity " << total_capacity;
    run.warnings.push_back(msg.str());
    budget = static_cast<int>(total_capacity);
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::size_t next = 0;
  while (st.round < budget) {
    while (st.pulls[next] >= bids[next].capacity) next = (next + 1) % n;
    const int round = st.round;
    const int reward = observe(realization, next, st);
    run.trace.steps.push_back({round, static_cast<int>(next), reward, nan});
    next = (next + 1) % n;
  }

  AllocationInput exploit;
  exploit.budget = units - st.round;
  for (std::size_t i = 0; i < n; ++i) {
    const double h =
        virtual_cost(config.distribution(static_cast<int>(i)), draws[i].alpha, bids[i].capacity);
    exploit.scores.push_back(reward_scale * st.mean[i] - h);
    exploit.capacities.push_back(bids[i].capacity - st.pulls[i]);
  }
  const Allocation extra = alloc_greedy(exploit);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return exploit.scores[a] > exploit.scores[b];
  });
  // Means stay frozen during exploitation.
  const std::vector<double> frozen = st.mean;
  for (std::size_t i : order) {
    for (int u = 0; u < extra.units[i]; ++u) {
      const int round = st.round;
      const int reward = observe(realization, i, st);
      run.trace.steps.push_back({round, static_cast<int>(i), reward, exploit.scores[i]});
    }
  }
  st.mean = frozen;

  settle(config, bids, params, run);
  return run;
}

LearningRun run_eps_separated(const MarketConfig& config, std::span<const Bid> bids,
                              const RewardRealization& realization, int explore_rounds,
                              TransformParams params, std::uint64_t seed) {
  if (bids.size() != static_cast<std::size_t>(config.agents())) {
    throw std::invalid_argument("one bid per agent required");
  }
  const std::vector<ResampleDraw> draws = draw_for(config, bids, params, seed);
  return run_eps_separated(config, bids, realization, explore_rounds, draws, params);
}

int eps_explore_rounds(int units, double exponent, int agents) {
  const auto rounded = static_cast<int>(std::lround(std::pow(static_cast<double>(units), exponent)));
  return std::min(units, std::max(agents, rounded));
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << "round,agent,reward,g_hat\n";
  for (const TraceStep& s : trace.steps) {
    out << s.round << ',' << s.agent << ',' << s.reward << ',' << format_double(s.g_hat) << '\n';
  }
}

RunTrace read_trace_csv(std::istream& in) {
  RunTrace trace;
  std::string line;
  if (!std::getline(in, line) || line != "round,agent,reward,g_hat") {
    throw std::runtime_error("trace CSV: missing or unexpected header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell[4];
    for (auto& c : cell) {
      if (!std::getline(row, c, ',')) throw std::runtime_error("trace CSV: short row: " + line);
    }
    TraceStep s;
    s.round = std::stoi(cell[0]);
    s.agent = std::stoi(cell[1]);
    s.reward = std::stoi(cell[2]);
    s.g_hat = cell[3] == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(cell[3]);
    trace.steps.push_back(s);
  }
  return trace;
}

}  // namespace bidauction
