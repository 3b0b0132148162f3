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

#include "bidauction/opt.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace bidauction {

namespace {

void validate(const MarketConfig& config, std::span<const double> qualities,
              std::span<const Bid> bids) {
  const auto n = static_cast<std::size_t>(config.agents());
  if (qualities.size() != n || bids.size() != n) {
    throw std::invalid_argument("qualities and bids must have one entry per agent");
  }
  if (!config.regular()) {
    throw IrregularDistributionError("2D-OPT requires regular type distributions");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const TypeDistribution& d = config.distribution(static_cast<int>(i));
    if (!d.cost_bounds().contains(bids[i].cost)) throw std::out_of_range("bid cost out of bounds");
    if (!d.capacity_bounds().contains(bids[i].capacity)) {
      throw std::out_of_range("bid capacity out of bounds");
    }
    if (!(qualities[i] >= 0.0 && qualities[i] <= 1.0)) {
      throw std::invalid_argument("quality must lie in [0, 1]");
    }
  }
}

std::vector<int> bid_capacities(std::span<const Bid> bids) {
  std::vector<int> caps;
  caps.reserve(bids.size());
  for (const Bid& b : bids) caps.push_back(b.capacity);
  return caps;
}

}  // namespace

std::vector<double> opt_scores(const MarketConfig& config, std::span<const double> qualities,
                               std::span<const Bid> bids) {
  std::vector<double> g(bids.size());
  for (std::size_t i = 0; i < bids.size(); ++i) {
    g[i] = g_score(config.distribution(static_cast<int>(i)), qualities[i], config.reward_scale(),
                   bids[i].cost, bids[i].capacity);
  }
  return g;
}

MechanismOutcome run_2d_opt(const MarketConfig& config, std::span<const double> qualities,
                            std::span<const Bid> bids) {
  validate(config, qualities, bids);
  const std::size_t n = bids.size();
  const double reward = config.reward_scale();

  const std::vector<double> scores = opt_scores(config, qualities, bids);
  MechanismOutcome out;
  out.allocation = alloc_greedy({scores, bid_capacities(bids), config.units()});
  out.payments.assign(n, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const int won = out.allocation.units[i];
    if (won == 0) continue;
    const TypeDistribution& dist = config.distribution(static_cast<int>(i));

    AllocationInput others{scores, {}, won};
    others.capacities.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      others.capacities[k] = bids[k].capacity - out.allocation.units[k];
    }
    others.capacities[i] = 0;
    others.scores[i] = -std::numeric_limits<double>::infinity();
    const Allocation displaced = alloc_greedy(others);

    const double price_cap = g_inverse(dist, qualities[i], reward, 0.0, bids[i].capacity);
    double payment = 0.0;
    int covered = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const int y = displaced.units[k];
      if (y == 0) continue;
      const double threshold = g_inverse(dist, qualities[i], reward, scores[k], bids[i].capacity);
      payment += y * std::min(threshold, price_cap);
      covered += y;
    }
    payment += (won - covered) * price_cap;
    out.payments[i] = payment;
  }
  out.auctioneer_utility = auctioneer_utility(out, qualities, reward);
  return out;
}

int opt_units_at_cost(const MarketConfig& config, std::span<const double> qualities,
                      std::span<const Bid> bids, int agent, double cost) {
  std::vector<Bid> moved(bids.begin(), bids.end());
  moved.at(static_cast<std::size_t>(agent)).cost = cost;
  const std::vector<double> scores = opt_scores(config, qualities, moved);
  return alloc_greedy({scores, bid_capacities(moved), config.units()})
      .units[static_cast<std::size_t>(agent)];
}

double opt_payment_integral_oracle(const MarketConfig& config, std::span<const double> qualities,
                                   std::span<const Bid> bids, int agent) {
  validate(config, qualities, bids);
  const auto i = static_cast<std::size_t>(agent);
  if (i >= bids.size()) throw std::out_of_range("agent index out of range");
  const TypeDistribution& dist = config.distribution(agent);
  const double reward = config.reward_scale();
  const double lo = bids[i].cost;
  const double hi = dist.cost_bounds().hi;
  const int k_i = bids[i].capacity;

  const double own_units = opt_units_at_cost(config, qualities, bids, agent, lo);
  if (own_units == 0) return 0.0;

  const double g_lo = g_score(dist, qualities[i], reward, lo, k_i);
  const double g_hi = g_score(dist, qualities[i], reward, hi, k_i);
  std::vector<double> breaks{lo, hi};
  const std::vector<double> scores = opt_scores(config, qualities, bids);
  for (std::size_t k = 0; k < bids.size(); ++k) {
    if (k == i) continue;
    if (scores[k] < g_lo && scores[k] > g_hi) {
      breaks.push_back(g_inverse(dist, qualities[i], reward, scores[k], k_i));
    }
  }
  if (g_hi < 0.0 && g_lo >= 0.0) breaks.push_back(g_inverse(dist, qualities[i], reward, 0.0, k_i));
  std::sort(breaks.begin(), breaks.end());

  double area = 0.0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double a = std::max(breaks[j], lo);
    const double b = std::min(breaks[j + 1], hi);
    if (!(b > a)) continue;
    area += (b - a) * opt_units_at_cost(config, qualities, bids, agent, 0.5 * (a + b));
  }
  return lo * own_units + area;
}

double auctioneer_utility(const MechanismOutcome& outcome, std::span<const double> qualities,
                          double reward_scale) {
  const auto& units = outcome.allocation.units;
  if (units.size() != qualities.size() || outcome.payments.size() != qualities.size()) {
    throw std::invalid_argument("outcome and qualities differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < units.size(); ++i) {
    total += units[i] * reward_scale * qualities[i] - outcome.payments[i];
  }
  return total;
}

}  // namespace bidauction
