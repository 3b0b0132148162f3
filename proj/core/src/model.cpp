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

#include "bidauction/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bidauction/random.hpp"

namespace bidauction {

namespace {

constexpr double kRegularityTolerance = 1e-12;
constexpr int kRegularityGrid = 64;

std::vector<int> capacity_grid(const CapacityRange& caps, int resolution) {
  std::vector<int> grid;
  const long span = static_cast<long>(caps.hi) - caps.lo + 1;
  if (span <= resolution) {
    for (int k = caps.lo; k <= caps.hi; ++k) grid.push_back(k);
    return grid;
  }
  for (int j = 0; j < resolution; ++j) {
    const double t = resolution == 1 ? 0.0 : static_cast<double>(j) / (resolution - 1);
    const int k = caps.lo + static_cast<int>(std::lround(t * static_cast<double>(span - 1)));
    if (grid.empty() || grid.back() != k) grid.push_back(k);
  }
  return grid;
}

void require_in_bounds(const TypeDistribution& dist, double c, int k) {
  if (!dist.cost_bounds().contains(c) || !dist.capacity_bounds().contains(k)) {
    std::ostringstream msg;
    msg << "type (" << c << ", " << k << ") outside distribution support";
    throw std::out_of_range(msg.str());
  }
}

}  // namespace

Bid Bid::deviation(const AgentType& type, double cost, int capacity) {
  if (capacity > type.capacity) {
    throw std::invalid_argument("reported capacity exceeds true capacity");
  }
  if (capacity < 0) throw std::invalid_argument("reported capacity is negative");
  return {cost, capacity};
}

TypeDistribution TypeDistribution::uniform(CostRange costs, CapacityRange capacities) {
  if (!(costs.lo < costs.hi)) throw std::invalid_argument("uniform cost range must have lo < hi");
  if (capacities.lo < 0 || capacities.lo > capacities.hi) {
    throw std::invalid_argument("capacity range must satisfy 0 <= lo <= hi");
  }
  TypeDistribution d;
  d.costs_ = costs;
  d.capacities_ = capacities;
  d.uniform_ = true;
  const double width = costs.width();
  const double cap_mass = 1.0 / (static_cast<double>(capacities.hi) - capacities.lo + 1.0);
  d.joint_density_ = [costs, capacities, width, cap_mass](double c, int k) {
    return costs.contains(c) && capacities.contains(k) ? cap_mass / width : 0.0;
  };
  d.cond_cdf_ = [costs, width](double c, int) {
    return std::clamp((c - costs.lo) / width, 0.0, 1.0);
  };
  d.cond_density_ = [costs, width](double c, int) { return costs.contains(c) ? 1.0 / width : 0.0; };
  return d;
}

TypeDistribution TypeDistribution::custom(CostRange costs, CapacityRange capacities,
                                          Function joint_density, Function cond_cdf,
                                          Function cond_density) {
  if (!(costs.lo <= costs.hi)) throw std::invalid_argument("cost range must have lo <= hi");
  if (capacities.lo < 0 || capacities.lo > capacities.hi) {
    throw std::invalid_argument("capacity range must satisfy 0 <= lo <= hi");
  }
  if (!joint_density || !cond_cdf || !cond_density) {
    throw std::invalid_argument("custom distribution requires all three functions");
  }
  TypeDistribution d;
  d.costs_ = costs;
  d.capacities_ = capacities;
  d.joint_density_ = std::move(joint_density);
  d.cond_cdf_ = std::move(cond_cdf);
  d.cond_density_ = std::move(cond_density);
  return d;
}

MarketConfig::MarketConfig(int units, double reward_scale,
                           std::vector<TypeDistribution> distributions)
    : units_(units), reward_scale_(reward_scale), distributions_(std::move(distributions)) {
  if (distributions_.empty()) throw std::invalid_argument("market needs at least one agent");
  if (units_ < 0) throw std::invalid_argument("units to procure must be >= 0");
  if (!(reward_scale_ > 0.0)) throw std::invalid_argument("reward scale R must be > 0");
  regular_ = std::all_of(distributions_.begin(), distributions_.end(),
                         [](const TypeDistribution& d) { return check_regularity(d, kRegularityGrid); });
}

MarketConfig MarketConfig::with_units(int units) const {
  MarketConfig copy = *this;
  if (units < 0) throw std::invalid_argument("units to procure must be >= 0");
  copy.units_ = units;
  return copy;
}

RewardRealization::RewardRealization(int agents, int units)
    : RewardRealization(agents, units,
                        std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(agents, 0)) *
                                                  static_cast<std::size_t>(std::max(units, 0)))) {}

RewardRealization::RewardRealization(int agents, int units, std::vector<std::uint8_t> entries)
    : agents_(agents), units_(units), table_(std::move(entries)) {
  if (agents_ < 0 || units_ < 0) throw std::invalid_argument("realization dimensions must be >= 0");
  if (table_.size() != static_cast<std::size_t>(agents_) * static_cast<std::size_t>(units_)) {
    throw std::invalid_argument("realization table has wrong number of entries");
  }
  if (std::any_of(table_.begin(), table_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw std::invalid_argument("realization entries must be 0 or 1");
  }
}

std::size_t RewardRealization::index(int agent, int unit) const {
  if (agent < 0 || agent >= agents_ || unit < 0 || unit >= units_) {
    throw std::out_of_range("realization index out of range");
  }
  return static_cast<std::size_t>(agent) * static_cast<std::size_t>(units_) +
         static_cast<std::size_t>(unit);
}

void RewardRealization::set(int agent, int unit, int value) {
  if (value != 0 && value != 1) throw std::invalid_argument("realization entries must be 0 or 1");
  table_[index(agent, unit)] = static_cast<std::uint8_t>(value);
}

double RewardRealization::row_mean(int agent) const {
  if (units_ == 0) return 0.0;
  long sum = 0;
  for (int j = 0; j < units_; ++j) sum += at(agent, j);
  return static_cast<double>(sum) / units_;
}

double virtual_cost(const TypeDistribution& dist, double c, int k) {
  require_in_bounds(dist, c, k);
  if (dist.is_uniform()) return 2.0 * c - dist.cost_bounds().lo;
  const double density = dist.cond_density(c, k);
  if (!(density > 0.0) || !std::isfinite(density)) {
    std::ostringstream msg;
    msg << "conditional density " << density << " at (" << c << ", " << k << ")";
    throw DegenerateDistributionError(msg.str());
  }
  return c + dist.cond_cdf(c, k) / density;
}

double g_score(const TypeDistribution& dist, double quality, double reward_scale, double c, int k) {
  return reward_scale * quality - virtual_cost(dist, c, k);
}

double g_inverse(const TypeDistribution& dist, double quality, double reward_scale, double g,
                 int k) {
  const CostRange& costs = dist.cost_bounds();
  const double g_top = g_score(dist, quality, reward_scale, costs.lo, k);
  const double slack = 1e-12 * std::max(1.0, std::abs(g_top));
  if (g > g_top + slack) {
    std::ostringstream msg;
    msg << "score " << g << " exceeds the score " << g_top << " at the lowest cost";
    throw std::out_of_range(msg.str());
  }
  if (g >= g_top) return costs.lo;
  const double g_bottom = g_score(dist, quality, reward_scale, costs.hi, k);
  if (g <= g_bottom) return costs.hi;

  if (dist.is_uniform()) {
    const double z = (reward_scale * quality - g + costs.lo) / 2.0;
    return std::clamp(z, costs.lo, costs.hi);
  }

  // G is strictly decreasing under regularity.
  double lo = costs.lo;
  double hi = costs.hi;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (g_score(dist, quality, reward_scale, mid, k) > g) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool check_regularity(const TypeDistribution& dist, int grid_resolution) {
  if (grid_resolution < 1) throw std::invalid_argument("grid_resolution must be >= 1");
  const CostRange& costs = dist.cost_bounds();
  std::vector<double> cost_grid;
  for (int j = 0; j < grid_resolution; ++j) {
    const double t = grid_resolution == 1 ? 0.0 : static_cast<double>(j) / (grid_resolution - 1);
    cost_grid.push_back(j + 1 == grid_resolution && grid_resolution > 1 ? costs.hi
                                                                        : costs.lo + t * costs.width());
  }
  const std::vector<int> caps = capacity_grid(dist.capacity_bounds(), grid_resolution);

  std::vector<double> h(cost_grid.size() * caps.size());
  try {
    for (std::size_t a = 0; a < caps.size(); ++a) {
      for (std::size_t b = 0; b < cost_grid.size(); ++b) {
        const double v = virtual_cost(dist, cost_grid[b], caps[a]);
        if (!std::isfinite(v)) return false;
        h[a * cost_grid.size() + b] = v;
      }
    }
  } catch (const DegenerateDistributionError&) {
    return false;
  }

  const auto at = [&](std::size_t a, std::size_t b) { return h[a * cost_grid.size() + b]; };
  for (std::size_t a = 0; a < caps.size(); ++a) {
    for (std::size_t b = 0; b + 1 < cost_grid.size(); ++b) {
      if (at(a, b + 1) < at(a, b) - kRegularityTolerance) return false;
    }
  }
  for (std::size_t a = 0; a + 1 < caps.size(); ++a) {
    for (std::size_t b = 0; b < cost_grid.size(); ++b) {
      if (at(a + 1, b) > at(a, b) + kRegularityTolerance) return false;
    }
  }
  return true;
}

RewardRealization sample_reward_realization(std::span<const double> qualities, int units,
                                            std::uint64_t seed) {
  if (units < 0) throw std::invalid_argument("units must be >= 0");
  const int agents = static_cast<int>(qualities.size());
  std::vector<std::uint8_t> table(static_cast<std::size_t>(agents) * static_cast<std::size_t>(units));
  Rng rng(seed);
  for (int i = 0; i < agents; ++i) {
    const double q = qualities[static_cast<std::size_t>(i)];
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quality must lie in [0, 1]");
    for (int j = 0; j < units; ++j) {
      table[static_cast<std::size_t>(i) * static_cast<std::size_t>(units) + static_cast<std::size_t>(j)] =
          uniform01(rng) < q ? 1 : 0;
    }
  }
  return RewardRealization(agents, units, std::move(table));
}

}  // namespace bidauction
