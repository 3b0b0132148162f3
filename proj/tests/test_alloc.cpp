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
#include <stdexcept>

#include "bidauction/alloc.hpp"
#include "bidauction/random.hpp"
#include "brute_force.hpp"

using namespace bidauction;

namespace {

double objective(const std::vector<double>& g, const Allocation& a) {
  double v = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) v += g[i] * a.units[i];
  return v;
}

}  // namespace

TEST_SUITE("alloc") {

TEST_CASE("worked examples") {
  CHECK(alloc_greedy({{23.6, 17.0}, {6, 10}, 10}).units == std::vector<int>{6, 4});
  CHECK(alloc_greedy({{-1.0, -0.5}, {6, 10}, 10}).units == std::vector<int>{0, 0});
  CHECK(alloc_greedy({{23.6, 17.0}, {6, 10}, 0}).units == std::vector<int>{0, 0});
  CHECK(alloc_greedy({{5.0, 5.0}, {4, 4}, 6}).units == std::vector<int>{4, 2});
  CHECK(objective({5.0, 5.0}, alloc_greedy({{5.0, 5.0}, {4, 4}, 6})) ==
        testing::brute_force_best({5.0, 5.0}, {4, 4}, 6));
}

TEST_CASE("zero scores are served, negative scores are not") {
  CHECK(alloc_greedy({{0.0, -1e-12}, {3, 3}, 5}).units == std::vector<int>{3, 0});
}

TEST_CASE("ties go to the lower index regardless of position") {
  CHECK(alloc_greedy({{1.0, 2.0, 2.0}, {5, 2, 2}, 3}).units == std::vector<int>{0, 2, 1});
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(alloc_greedy({{1.0}, {1, 2}, 3}), std::invalid_argument);
  CHECK_THROWS_AS(alloc_greedy({{1.0}, {-1}, 3}), std::invalid_argument);
  CHECK_THROWS_AS(alloc_greedy({{1.0}, {1}, -3}), std::invalid_argument);
  CHECK(alloc_greedy({{}, {}, 3}).total() == 0);
}

TEST_CASE("matches brute-force enumeration and respects the constraints") {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(uniform01(rng) * 4);
    AllocationInput in;
    in.budget = static_cast<int>(uniform01(rng) * 13);
    for (int i = 0; i < n; ++i) {
      // Coarse grid makes ties common.
      in.scores.push_back(std::round((uniform01(rng) * 20.0 - 5.0) * 2.0) / 2.0);
      in.capacities.push_back(static_cast<int>(uniform01(rng) * 6));
    }
    const Allocation a = alloc_greedy(in);
    CHECK(objective(in.scores, a) == testing::brute_force_best(in.scores, in.capacities, in.budget));
    CHECK(a.total() <= in.budget);
    for (int i = 0; i < n; ++i) {
      CHECK(a.units[i] >= 0);
      CHECK(a.units[i] <= in.capacities[i]);
      if (in.scores[i] < 0.0) CHECK(a.units[i] == 0);
    }
  }
}

TEST_CASE("own units are monotone in own score and own capacity") {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    AllocationInput in;
    in.budget = 1 + static_cast<int>(uniform01(rng) * 12);
    for (int i = 0; i < 4; ++i) {
      in.scores.push_back(uniform01(rng) * 10.0 - 2.0);
      in.capacities.push_back(static_cast<int>(uniform01(rng) * 6));
    }
    const int before = alloc_greedy(in).units[0];
    AllocationInput higher = in;
    higher.scores[0] += uniform01(rng) * 5.0;
    CHECK(alloc_greedy(higher).units[0] >= before);
    AllocationInput bigger = in;
    bigger.capacities[0] += 1 + static_cast<int>(uniform01(rng) * 3);
    CHECK(alloc_greedy(bigger).units[0] >= before);
  }
}

}  // TEST_SUITE
