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

#include <vector>

namespace bidauction {

/// Per-agent scores and capacities for one call of the greedy allocator.
struct AllocationInput {
  std::vector<double> scores;
  std::vector<int> capacities;
  int budget = 0;
};

struct Allocation {
  std::vector<int> units;

  int total() const;
};

/// Greedy capacitated allocation: agents in non-increasing score order (ties
/// by ascending index) each take min(capacity, remaining budget) until the
/// budget is exhausted or the next score is negative. Agents with score
/// exactly zero are still served.
///
/// The result maximizes sum(scores[i] * units[i]) over integer allocations
/// with units[i] <= capacities[i], sum(units) <= budget and no units for
/// negative scores.
Allocation alloc_greedy(const AllocationInput& input);

}  // namespace bidauction
