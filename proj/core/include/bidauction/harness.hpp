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
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "bidauction/model.hpp"
#include "bidauction/ucb.hpp"

namespace bidauction {

/// Raised for unreadable, malformed or out-of-range configuration; the
/// message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cost law for one agent. Only the independent uniform family is
/// configurable from a file.
struct CostDistributionSpec {
  std::string family = "uniform";
  CostRange cost{0.0, 1.0};
};

struct ExperimentConfig {
  int agents = 5;
  std::vector<int> units{1000, 12000, 23000, 34000, 45000, 56000, 67000, 78000, 89000, 100000};
  double reward_scale = 30.0;
  double mu = 0.1;
  std::vector<CostDistributionSpec> distributions{CostDistributionSpec{}};  // one shared, or n
  double quality_lo = 0.5;
  double quality_hi = 1.0;
  int type_samples = 200;
  int realizations = 100;
  std::vector<double> eps_exponents{1.0 / 6.0, 1.0 / 3.0, 1.0 / 2.0, 2.0 / 3.0};
  /// Capacities are discrete uniform on [ceil(f * ceil(L / n)), L].
  double capacity_lower_fraction = 0.5;
  std::uint64_t seed = 20150601;
  int threads = 0;
  UcbOptions ucb;

  const CostDistributionSpec& distribution_for(int agent) const;
  CapacityRange capacity_bounds(int units) const;
  void validate() const;
};

/// Reads a JSON configuration. Omitted keys keep their defaults; an empty
/// file yields the defaults.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text);

struct ResultRow {
  std::string mechanism;
  int units = 0;
  double mean_utility_per_unit = 0.0;
  double standard_error = 0.0;
  long replications = 0;
  long infeasible_samples = 0;  // type samples whose capacities sum below L
};

inline constexpr const char* kOptLabel = "2D-OPT";
inline constexpr const char* kUcbLabel = "2D-UCB";
std::string eps_label(double exponent);

/// Runs every mechanism at every L and returns rows ordered by mechanism
/// (2D-OPT, 2D-UCB, then one per exploration exponent) and ascending L.
/// Results depend only on the configuration, never on the thread count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

/// CSV header `mechanism,L,mean_utility_per_unit,stderr,replications`.
void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> read_results_csv(std::istream& in);

/// Line chart, log-scale L axis, one polyline per mechanism with error bars.
std::string render_results_svg(const std::vector<ResultRow>& rows);

void emit_results(const std::vector<ResultRow>& rows, const std::filesystem::path& csv_path,
                  const std::filesystem::path& svg_path);

}  // namespace bidauction
