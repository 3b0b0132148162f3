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

#include "bidauction/alloc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bidauction {

int Allocation::total() const { return std::accumulate(units.begin(), units.end(), 0); }

Allocation alloc_greedy(const AllocationInput& input) {
  const std::size_t n = input.scores.size();
  if (input.capacities.size() != n) {
    throw std::invalid_argument("scores and capacities differ in length");
  }
  if (input.budget < 0) throw std::invalid_argument("budget must be >= 0");
  for (int k : input.capacities) {
    if (k < 0) throw std::invalid_argument("capacities must be >= 0");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return input.scores[a] > input.scores[b];
  });

  Allocation out{std::vector<int>(n, 0)};
  int remaining = input.budget;
  for (std::size_t agent : order) {
    if (remaining == 0 || input.scores[agent] < 0.0) break;
    const int take = std::min(input.capacities[agent], remaining);
    out.units[agent] = take;
    remaining -= take;
  }
  return out;
}

}  // namespace bidauction
