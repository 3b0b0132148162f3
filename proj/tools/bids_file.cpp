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

#include "bids_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bidauction::cli {

BidsFile read_bids_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bids file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "agent,cost,capacity,quality") {
    throw std::runtime_error("bids file: expected header agent,cost,capacity,quality");
  }
  BidsFile file;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell[4];
    for (auto& c : cell) {
      if (!std::getline(row, c, ',')) {
        throw std::runtime_error("bids file line " + std::to_string(line_no) + ": expected 4 fields");
      }
    }
    try {
      const int agent = std::stoi(cell[0]);
      if (agent != static_cast<int>(file.bids.size())) {
        throw std::runtime_error("bids file line " + std::to_string(line_no) +
                                 ": agents must be numbered 0..n-1 in order");
      }
      file.bids.push_back({std::stod(cell[1]), std::stoi(cell[2])});
      file.qualities.push_back(std::stod(cell[3]));
    } catch (const std::logic_error&) {
      throw std::runtime_error("bids file line " + std::to_string(line_no) + ": bad number");
    }
  }
  if (file.bids.empty()) throw std::runtime_error("bids file has no agents");
  return file;
}

}  // namespace bidauction::cli
