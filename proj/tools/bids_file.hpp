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

#include <filesystem>
#include <vector>

#include "bidauction/model.hpp"

namespace bidauction::cli {

struct BidsFile {
  std::vector<Bid> bids;
  std::vector<double> qualities;
};

// CSV with header agent,cost,capacity,quality; agents numbered 0..n-1 in order.
BidsFile read_bids_file(const std::filesystem::path& path);

}  // namespace bidauction::cli
