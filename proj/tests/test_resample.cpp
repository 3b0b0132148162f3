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

#include <algorithm>
#include <cmath>

#include "bidauction/alloc.hpp"
#include "bidauction/resample.hpp"
#include "bidauction/stats.hpp"

using namespace bidauction;

TEST_SUITE("resample") {

TEST_CASE("parameters") {
  CHECK_THROWS_AS(TransformParams(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TransformParams(1.0), std::invalid_argument);
  CHECK_THROWS_AS(TransformParams(-0.2), std::invalid_argument);
  CHECK(TransformParams(0.1).mu() == 0.1);
}

TEST_CASE("keep probability and ordering") {
  const TransformParams params(0.1);
  const CostRange bounds{0.0, 1.0};
  Rng rng(3);
  long kept = 0;
  const long draws = 100'000;
  for (long s = 0; s < draws; ++s) {
    const ResampleDraw d = self_resample(0.3, bounds, params, rng);
    CHECK(d.alpha <= 1.0);
    CHECK(d.alpha >= d.beta);
    CHECK(d.beta >= 0.3);
    if (d.beta == 0.3) {
      CHECK(d.alpha == 0.3);
      ++kept;
    }
  }
  const double sigma = std::sqrt(0.9 * 0.1 / draws);
  CHECK(std::abs(static_cast<double>(kept) / draws - 0.9) <= 3.0 * sigma);
}

TEST_CASE("bid at the top of the range stays put") {
  Rng rng(4);
  for (int s = 0; s < 1000; ++s) {
    const ResampleDraw d = self_resample(1.0, {0.0, 1.0}, TransformParams(0.5), rng);
    CHECK(d.alpha == 1.0);
    CHECK(d.beta == 1.0);
  }
}

TEST_CASE("beta is uniform above the bid when it moves") {
  Rng rng(5);
  std::vector<double> moved;
  while (moved.size() < 20'000) {
    const ResampleDraw d = self_resample(0.4, {0.0, 1.0}, TransformParams(0.3), rng);
    if (d.beta > 0.4) moved.push_back(d.beta);
  }
  const double ks = ks_statistic(moved, [](double x) { return std::clamp((x - 0.4) / 0.6, 0.0, 1.0); });
  CHECK(ks_p_value(ks, moved.size()) > 0.01);
}

TEST_CASE("alpha after a move follows the closed-form law") {
  // P(alpha >= a | beta > c) = ((hi - a) / (hi - c))^(1 - mu).
  const double mu = 0.3;
  const double c = 0.2;
  Rng rng(6);
  std::vector<double> alphas;
  for (int s = 0; s < 200'000; ++s) {
    const ResampleDraw d = self_resample(c, {0.0, 1.0}, TransformParams(mu), rng);
    if (d.beta > c) alphas.push_back(d.alpha);
  }
  const double ks = ks_statistic(alphas, [&](double a) {
    if (a <= c) return 0.0;
    return 1.0 - std::pow((1.0 - a) / (1.0 - c), 1.0 - mu);
  });
  CHECK(ks_p_value(ks, alphas.size()) > 0.01);
}

TEST_CASE("coupled draws are monotone in the bid") {
  const TransformParams params(0.4);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    ResampleDraw prev{0.0, 0.0};
    for (int j = 0; j <= 10; ++j) {
      const ResampleDraw d = self_resample(j / 10.0, {0.0, 1.0}, params, seed);
      CHECK(d.alpha >= prev.alpha);
      CHECK(d.beta >= prev.beta);
      prev = d;
    }
  }
}

TEST_CASE("deterministic given the seed") {
  const ResampleDraw a = self_resample(0.25, {0.0, 1.0}, TransformParams(0.5), 99);
  const ResampleDraw b = self_resample(0.25, {0.0, 1.0}, TransformParams(0.5), 99);
  CHECK(a.alpha == b.alpha);
  CHECK(a.beta == b.beta);
  CHECK_THROWS_AS(self_resample(1.5, {0.0, 1.0}, TransformParams(0.5), 1), std::out_of_range);
}

TEST_CASE("premiums") {
  const TransformParams params(0.1);
  CHECK(resampling_premium(3, {0.5, 0.5}, 0.5, {0.0, 8.5}, params) == 0.0);
  CHECK(resampling_premium(3, {6.0, 4.0}, 0.5, {0.0, 8.5}, params) == doctest::Approx(240.0));
  CHECK(resampling_premium(0, {6.0, 4.0}, 0.5, {0.0, 8.5}, params) == 0.0);
  CHECK(transformation_premium(3, params, 1.0 / 8.0) == doctest::Approx(240.0));
  CHECK_THROWS_AS(transformation_premium(3, params, 0.0), std::invalid_argument);
}

TEST_CASE("transformed mechanism allocates on alpha and pays bid plus premium") {
  const std::vector<Bid> bids{{0.2, 3}, {0.6, 2}};
  const std::vector<CostRange> bounds{{0.0, 1.0}, {0.0, 1.0}};
  const AllocationRule rule = [](std::span<const double> costs, std::span<const int> caps) {
    std::vector<double> g;
    for (double c : costs) g.push_back(1.5 - 2.0 * c);
    return alloc_greedy({g, std::vector<int>(caps.begin(), caps.end()), 4}).units;
  };
  const std::vector<double> reward{1.0, 1.0};
  Rng rng(8);
  for (int s = 0; s < 2000; ++s) {
    const TransformedOutcome t = transform_allocate_and_pay(rule, bids, bounds, TransformParams(0.2), rng, reward);
    const std::vector<double> alphas{t.draws[0].alpha, t.draws[1].alpha};
    CHECK(t.outcome.allocation.units == rule(alphas, std::vector<int>{3, 2}));
    double utility = 0.0;
    for (int i = 0; i < 2; ++i) {
      const int x = t.outcome.allocation.units[i];
      const double expect =
          bids[i].cost * x + (t.draws[i].beta > bids[i].cost ? x * (1.0 - bids[i].cost) / 0.2 : 0.0);
      CHECK(t.outcome.payments[i] == doctest::Approx(expect).epsilon(1e-14));
      utility += x - t.outcome.payments[i];
    }
    CHECK(t.outcome.auctioneer_utility == doctest::Approx(utility));
  }
  CHECK_THROWS_AS(transform_allocate_and_pay(rule, bids, bounds, TransformParams(0.2), rng, std::vector<double>{1.0}),
                  std::invalid_argument);
}

}  // TEST_SUITE
