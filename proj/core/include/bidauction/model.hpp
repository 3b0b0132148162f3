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
#include <stdexcept>
#include <string>
#include <vector>

namespace bidauction {

/// Raised when a conditional density is zero, negative or non-finite at a
/// point where the virtual cost is requested.
class DegenerateDistributionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a mechanism that relies on regularity is asked to run on an
/// irregular type distribution.
class IrregularDistributionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct CostRange {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double c) const { return c >= lo && c <= hi; }
};

struct CapacityRange {
  int lo = 0;
  int hi = 0;

  bool contains(int k) const { return k >= lo && k <= hi; }
};

/// True private type of an agent.
struct AgentType {
  double cost = 0.0;
  int capacity = 0;
  double quality = 0.0;
};

/// Reported (cost, capacity) pair.
struct Bid {
  double cost = 0.0;
  int capacity = 0;

  static Bid truthful(const AgentType& type) { return {type.cost, type.capacity}; }

  /// Builds a misreport of `type`. Over-reporting capacity is rejected.
  static Bid deviation(const AgentType& type, double cost, int capacity);
};

/// Joint law of (cost, capacity) for one agent.
///
/// The built-in family is an independent product of a uniform cost on
/// `cost_bounds` and a discrete uniform capacity on `capacity_bounds`; it has
/// closed-form virtual costs and inverse scores. Any other law is supplied
/// through three callables and is handled numerically.
class TypeDistribution {
 public:
  using Function = std::function<double(double cost, int capacity)>;

  static TypeDistribution uniform(CostRange costs, CapacityRange capacities);
  static TypeDistribution custom(CostRange costs, CapacityRange capacities, Function joint_density,
                                 Function cond_cdf, Function cond_density);

  const CostRange& cost_bounds() const { return costs_; }
  const CapacityRange& capacity_bounds() const { return capacities_; }
  bool is_uniform() const { return uniform_; }

  double joint_density(double c, int k) const { return joint_density_(c, k); }
  double cond_cdf(double c, int k) const { return cond_cdf_(c, k); }
  double cond_density(double c, int k) const { return cond_density_(c, k); }

 private:
  TypeDistribution() = default;

  CostRange costs_;
  CapacityRange capacities_;
  bool uniform_ = false;
  Function joint_density_;
  Function cond_cdf_;
  Function cond_density_;
};

/// Market-wide constants plus one type distribution per agent.
///
/// Regularity of every distribution is evaluated once at construction and
/// cached; mechanisms that need it query `regular()`.
class MarketConfig {
 public:
  MarketConfig(int units, double reward_scale, std::vector<TypeDistribution> distributions);

  int agents() const { return static_cast<int>(distributions_.size()); }
  int units() const { return units_; }
  double reward_scale() const { return reward_scale_; }
  const TypeDistribution& distribution(int agent) const { return distributions_.at(agent); }
  std::span<const TypeDistribution> distributions() const { return distributions_; }
  bool regular() const { return regular_; }

  MarketConfig with_units(int units) const;

 private:
  int units_;
  double reward_scale_;
  std::vector<TypeDistribution> distributions_;
  bool regular_;
};

/// n x L table of Bernoulli outcomes; entry (i, j) is the reward of the j-th
/// unit bought from agent i.
class RewardRealization {
 public:
  RewardRealization(int agents, int units);
  RewardRealization(int agents, int units, std::vector<std::uint8_t> entries);

  int agents() const { return agents_; }
  int units() const { return units_; }
  int at(int agent, int unit) const { return table_.at(index(agent, unit)); }
  void set(int agent, int unit, int value);
  double row_mean(int agent) const;

 private:
  std::size_t index(int agent, int unit) const;

  int agents_;
  int units_;
  std::vector<std::uint8_t> table_;
};

/// H(c, k) = c + F(c|k) / f(c|k).
double virtual_cost(const TypeDistribution& dist, double c, int k);

/// G = R q - H(c, k).
double g_score(const TypeDistribution& dist, double quality, double reward_scale, double c, int k);

/// Cost z with g_score(z) == g. Returns cost_hi when g lies below the score at
/// cost_hi; throws std::out_of_range when g exceeds the score at cost_lo.
double g_inverse(const TypeDistribution& dist, double quality, double reward_scale, double g, int k);

/// Checks that H is non-decreasing in cost and non-increasing in capacity on
/// a grid with `grid_resolution` points per axis (all capacities when the
/// capacity range is narrower than that).
bool check_regularity(const TypeDistribution& dist, int grid_resolution);

RewardRealization sample_reward_realization(std::span<const double> qualities, int units,
                                            std::uint64_t seed);

}  // namespace bidauction
