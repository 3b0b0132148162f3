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

#include <doctest.h>

#include <cmath>

#include "bidauction/model.hpp"
#include "bidauction/random.hpp"
#include "support.hpp"

using namespace bidauction;
using namespace bidauction::testing;

TEST_SUITE("model") {

TEST_CASE("virtual cost of uniform laws") {
  const auto unit = TypeDistribution::uniform({0.0, 1.0}, {1, 5});
  CHECK(virtual_cost(unit, 0.3, 2) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(virtual_cost(unit, 0.0, 2) == 0.0);
  const auto wide = TypeDistribution::uniform({0.0, 10.0}, {1, 5});
  CHECK(virtual_cost(wide, 2.0, 1) == doctest::Approx(4.0).epsilon(1e-15));
  const auto shifted = TypeDistribution::uniform({2.0, 3.0}, {1, 5});
  CHECK(virtual_cost(shifted, 2.0, 1) == doctest::Approx(2.0));
  CHECK(virtual_cost(shifted, 2.5, 1) == doctest::Approx(3.0));
}

TEST_CASE("virtual cost through the numeric path matches the closed form") {
  const auto closed = TypeDistribution::uniform({0.0, 10.0}, {1, 5});
  const auto numeric = numeric_uniform({0.0, 10.0}, {1, 5});
  for (double c = 0.0; c <= 10.0; c += 0.37) {
    CHECK(virtual_cost(numeric, c, 3) == doctest::Approx(virtual_cost(closed, c, 3)).epsilon(1e-12));
  }
}

TEST_CASE("virtual cost errors") {
  const auto unit = TypeDistribution::uniform({0.0, 1.0}, {1, 5});
  CHECK_THROWS_AS(virtual_cost(unit, 1.5, 1), std::out_of_range);
  CHECK_THROWS_AS(virtual_cost(unit, 0.5, 6), std::out_of_range);
  const auto hole = TypeDistribution::custom(
      {0.0, 1.0}, {1, 1}, [](double, int) { return 1.0; }, [](double c, int) { return c; },
      [](double c, int) { return c < 0.5 ? 1.0 : 0.0; });
  CHECK_THROWS_AS(virtual_cost(hole, 0.7, 1), DegenerateDistributionError);
  CHECK(virtual_cost(hole, 0.2, 1) == doctest::Approx(0.4));
}

TEST_CASE("virtual cost is at least the cost") {
  const TypeDistribution dists[] = {TypeDistribution::uniform({0.0, 1.0}, {1, 5}),
                                    increasing_exponential(4.0, {1, 5}), irregular_mixture({1, 5}),
                                    capacity_dependent({1, 5})};
  for (const auto& d : dists) {
    for (int k = 1; k <= 5; ++k) {
      for (double c = 0.0; c <= 1.0; c += 0.01) CHECK(virtual_cost(d, c, k) >= c);
    }
  }
}

TEST_CASE("conditional cdf endpoints and monotonicity") {
  const TypeDistribution dists[] = {TypeDistribution::uniform({0.0, 1.0}, {1, 5}),
                                    increasing_exponential(4.0, {1, 5}), irregular_mixture({1, 5}),
                                    capacity_dependent({1, 5})};
  for (const auto& d : dists) {
    for (int k = 1; k <= 5; ++k) {
      CHECK(d.cond_cdf(0.0, k) == doctest::Approx(0.0));
      CHECK(d.cond_cdf(1.0, k) == doctest::Approx(1.0));
      double prev = -1.0;
      for (double c = 0.0; c <= 1.0; c += 0.01) {
        const double f = d.cond_cdf(c, k);
        CHECK(f >= prev);
        prev = f;
        // Density is the derivative of the cdf.
        if (c > 0.01 && c < 0.99) {
          const double h = 1e-6;
          const double slope = (d.cond_cdf(c + h, k) - d.cond_cdf(c - h, k)) / (2 * h);
          CHECK(slope == doctest::Approx(d.cond_density(c, k)).epsilon(1e-5));
        }
      }
    }
  }
}

TEST_CASE("g score") {
  const auto unit = TypeDistribution::uniform({0.0, 1.0}, {1, 10});
  CHECK(g_score(unit, 0.8, 30.0, 0.2, 6) == doctest::Approx(23.6).epsilon(1e-14));
  CHECK(g_score(unit, 0.0, 30.0, 0.0, 6) == 0.0);
  const auto wide = TypeDistribution::uniform({0.0, 10.0}, {1, 10});
  CHECK(g_score(wide, 0.6, 30.0, 5.0, 1) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("g inverse") {
  const auto wide = TypeDistribution::uniform({0.0, 10.0}, {1, 10});
  CHECK(g_inverse(wide, 0.8, 30.0, 8.0, 1) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(g_inverse(wide, 0.8, 30.0, g_score(wide, 0.8, 30.0, 0.0, 1), 1) == 0.0);
  // Below the score at the top of the range: clamps to cost_hi.
  CHECK(g_inverse(wide, 0.8, 30.0, -50.0, 1) == 10.0);
  CHECK_THROWS_AS(g_inverse(wide, 0.8, 30.0, 24.5, 1), std::out_of_range);
}

TEST_CASE("bisection inverse agrees with the closed form") {
  const auto closed = TypeDistribution::uniform({0.0, 10.0}, {1, 10});
  const auto numeric = numeric_uniform({0.0, 10.0}, {1, 10});
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const double q = uniform01(rng);
    const double top = g_score(closed, q, 30.0, 0.0, 1);
    const double bottom = g_score(closed, q, 30.0, 10.0, 1);
    const double g = bottom + (top - bottom) * uniform01(rng);
    CHECK(std::abs(g_inverse(numeric, q, 30.0, g, 1) - g_inverse(closed, q, 30.0, g, 1)) <= 1e-9);
  }
}

TEST_CASE("g inverse undoes g score on regular laws") {
  const TypeDistribution dists[] = {TypeDistribution::uniform({0.0, 1.0}, {1, 5}),
                                    increasing_exponential(4.0, {1, 5}), capacity_dependent({1, 5})};
  for (const auto& d : dists) {
    for (int k = 1; k <= 5; ++k) {
      for (double c = 0.0; c <= 1.0; c += 0.013) {
        const double g = g_score(d, 0.7, 30.0, c, k);
        CHECK(std::abs(g_inverse(d, 0.7, 30.0, g, k) - c) <= 1e-9);
      }
    }
  }
}

TEST_CASE("regularity") {
  CHECK(check_regularity(TypeDistribution::uniform({0.0, 1.0}, {1, 100}), 64));
  CHECK(check_regularity(increasing_exponential(50.0, {1, 5}), 64));
  CHECK(check_regularity(capacity_dependent({1, 8}), 64));
  CHECK_FALSE(check_regularity(capacity_dependent({1, 8}, 3.0, true), 64));
  CHECK_FALSE(check_regularity(irregular_mixture({1, 5}), 64));
  CHECK(check_regularity(irregular_mixture({1, 5}), 1));
  CHECK_THROWS_AS(check_regularity(irregular_mixture({1, 5}), 0), std::invalid_argument);
  const auto hole = TypeDistribution::custom(
      {0.0, 1.0}, {1, 1}, [](double, int) { return 1.0; }, [](double c, int) { return c; },
      [](double c, int) { return c < 0.5 ? 1.0 : 0.0; });
  CHECK_FALSE(check_regularity(hole, 16));
}

TEST_CASE("market config validation and cached regularity") {
  const auto unit = TypeDistribution::uniform({0.0, 1.0}, {1, 5});
  CHECK_THROWS_AS(MarketConfig(5, 30.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(MarketConfig(-1, 30.0, {unit}), std::invalid_argument);
  CHECK_THROWS_AS(MarketConfig(5, 0.0, {unit}), std::invalid_argument);
  const MarketConfig ok(5, 30.0, {unit, unit});
  CHECK(ok.regular());
  CHECK(ok.agents() == 2);
  CHECK(ok.with_units(9).units() == 9);
  CHECK_FALSE(MarketConfig(5, 30.0, {unit, irregular_mixture({1, 5})}).regular());
}

TEST_CASE("distribution construction errors") {
  CHECK_THROWS_AS(TypeDistribution::uniform({1.0, 1.0}, {1, 5}), std::invalid_argument);
  CHECK_THROWS_AS(TypeDistribution::uniform({0.0, 1.0}, {3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(TypeDistribution::uniform({0.0, 1.0}, {-1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(TypeDistribution::custom({0.0, 1.0}, {1, 2}, nullptr, nullptr, nullptr),
                  std::invalid_argument);
}

TEST_CASE("bids never over-report capacity") {
  const AgentType type{0.4, 5, 0.8};
  CHECK(Bid::truthful(type).capacity == 5);
  CHECK(Bid::deviation(type, 0.9, 3).capacity == 3);
  CHECK_THROWS_AS(Bid::deviation(type, 0.9, 6), std::invalid_argument);
  CHECK_THROWS_AS(Bid::deviation(type, 0.9, -1), std::invalid_argument);
}

TEST_CASE("reward realization table") {
  RewardRealization table(2, 3);
  CHECK(table.at(1, 2) == 0);
  table.set(1, 2, 1);
  CHECK(table.at(1, 2) == 1);
  CHECK(table.row_mean(1) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(table.set(0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(table.at(2, 0), std::out_of_range);
  CHECK_THROWS_AS(RewardRealization(2, 2, {0, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(RewardRealization(1, 2, {0, 3}), std::invalid_argument);
}

TEST_CASE("sampled reward realizations") {
  const std::vector<double> q{1.0, 0.0, 0.5};
  const RewardRealization s = sample_reward_realization(q, 10'000, 42);
  CHECK(s.row_mean(0) == 1.0);
  CHECK(s.row_mean(1) == 0.0);
  CHECK(std::abs(s.row_mean(2) - 0.5) <= 0.015);
  const RewardRealization again = sample_reward_realization(q, 10'000, 42);
  bool same = true;
  for (int j = 0; j < 10'000; ++j) same = same && s.at(2, j) == again.at(2, j);
  CHECK(same);
  CHECK_THROWS_AS(sample_reward_realization(std::vector<double>{1.2}, 3, 1), std::invalid_argument);
  CHECK(sample_reward_realization(q, 0, 1).units() == 0);
}

}  // TEST_SUITE
