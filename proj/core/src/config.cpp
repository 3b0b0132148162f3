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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bidauction/harness.hpp"

namespace bidauction {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
  }
}

const json& require_object(const json& v, const std::string& key) {
  if (!v.is_object()) fail(key, "expected an object");
  return v;
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  return v.get<double>();
}

long long get_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail(key, "expected an integer");
  return v.get<long long>();
}

CostDistributionSpec parse_distribution(const json& v, const std::string& key) {
  require_object(v, key);
  reject_unknown(v, key, {"family", "cost_lo", "cost_hi"});
  CostDistributionSpec spec;
  if (v.contains("family")) {
    if (!v["family"].is_string()) fail(key + ".family", "expected a string");
    spec.family = v["family"].get<std::string>();
  }
  if (v.contains("cost_lo")) spec.cost.lo = get_number(v["cost_lo"], key + ".cost_lo");
  if (v.contains("cost_hi")) spec.cost.hi = get_number(v["cost_hi"], key + ".cost_hi");
  return spec;
}

}  // namespace

const CostDistributionSpec& ExperimentConfig::distribution_for(int agent) const {
  return distributions.size() == 1 ? distributions.front()
                                   : distributions.at(static_cast<std::size_t>(agent));
}

CapacityRange ExperimentConfig::capacity_bounds(int units) const {
  const double per_agent = std::ceil(static_cast<double>(units) / agents);
  int lo = static_cast<int>(std::ceil(capacity_lower_fraction * per_agent));
  lo = std::clamp(lo, 1, std::max(1, units));
  return {lo, std::max(lo, units)};
}

void ExperimentConfig::validate() const {
  if (agents < 1) fail("n", "must be >= 1");
  if (units.empty()) fail("L", "must list at least one value");
  for (std::size_t j = 0; j < units.size(); ++j) {
    if (units[j] < agents) fail("L", "every L must be >= n");
    if (j > 0 && units[j] <= units[j - 1]) fail("L", "must be sorted strictly ascending");
  }
  if (!(reward_scale > 0.0)) fail("R", "must be > 0");
  if (!(mu > 0.0 && mu < 1.0)) fail("mu", "must lie in (0, 1)");
  if (distributions.size() != 1 && distributions.size() != static_cast<std::size_t>(agents)) {
    fail("distribution", "give one shared distribution or exactly n");
  }
  for (const auto& d : distributions) {
    if (d.family != "uniform") fail("distribution.family", "only \"uniform\" is supported");
    if (!(d.cost.lo < d.cost.hi)) fail("distribution.cost_lo", "must be < cost_hi");
  }
  if (!(0.0 <= quality_lo && quality_lo <= quality_hi && quality_hi <= 1.0)) {
    fail("quality", "need 0 <= lo <= hi <= 1");
  }
  if (type_samples < 1) fail("replications.type_samples", "must be >= 1");
  if (realizations < 1) fail("replications.realizations", "must be >= 1");
  for (double e : eps_exponents) {
    if (!(e > 0.0 && e < 1.0)) fail("eps_exponents", "exponents must lie in (0, 1)");
  }
  if (!(capacity_lower_fraction > 0.0)) fail("capacity.lower_fraction", "must be > 0");
  if (threads < 0) fail("threads", "must be >= 0");
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  bool blank = true;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
  }
  if (blank) return cfg;

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  require_object(root, "<root>");
  reject_unknown(root, "",
                 {"n", "L", "R", "mu", "distribution", "quality", "replications", "eps_exponents",
                  "capacity", "seed", "threads", "ucb"});

  if (root.contains("n")) cfg.agents = static_cast<int>(get_integer(root["n"], "n"));
  if (root.contains("L")) {
    if (!root["L"].is_array()) fail("L", "expected an array of integers");
    cfg.units.clear();
    for (const auto& v : root["L"]) cfg.units.push_back(static_cast<int>(get_integer(v, "L")));
  }
  if (root.contains("R")) cfg.reward_scale = get_number(root["R"], "R");
  if (root.contains("mu")) cfg.mu = get_number(root["mu"], "mu");
  if (root.contains("distribution")) {
    const json& d = root["distribution"];
    cfg.distributions.clear();
    if (d.is_array()) {
      for (std::size_t j = 0; j < d.size(); ++j) {
        cfg.distributions.push_back(parse_distribution(d[j], "distribution[" + std::to_string(j) + "]"));
      }
    } else {
      cfg.distributions.push_back(parse_distribution(d, "distribution"));
    }
  }
  if (root.contains("quality")) {
    const json& q = require_object(root["quality"], "quality");
    reject_unknown(q, "quality", {"lo", "hi"});
    if (q.contains("lo")) cfg.quality_lo = get_number(q["lo"], "quality.lo");
    if (q.contains("hi")) cfg.quality_hi = get_number(q["hi"], "quality.hi");
  }
  if (root.contains("replications")) {
    const json& r = require_object(root["replications"], "replications");
    reject_unknown(r, "replications", {"type_samples", "realizations"});
    if (r.contains("type_samples")) {
      cfg.type_samples = static_cast<int>(get_integer(r["type_samples"], "replications.type_samples"));
    }
    if (r.contains("realizations")) {
      cfg.realizations = static_cast<int>(get_integer(r["realizations"], "replications.realizations"));
    }
  }
  if (root.contains("eps_exponents")) {
    if (!root["eps_exponents"].is_array()) fail("eps_exponents", "expected an array of numbers");
    cfg.eps_exponents.clear();
    for (const auto& v : root["eps_exponents"]) {
      cfg.eps_exponents.push_back(get_number(v, "eps_exponents"));
    }
  }
  if (root.contains("capacity")) {
    const json& c = require_object(root["capacity"], "capacity");
    reject_unknown(c, "capacity", {"lower_fraction"});
    if (c.contains("lower_fraction")) {
      cfg.capacity_lower_fraction = get_number(c["lower_fraction"], "capacity.lower_fraction");
    }
  }
  if (root.contains("seed")) {
    const long long s = get_integer(root["seed"], "seed");
    if (s < 0) fail("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (root.contains("threads")) cfg.threads = static_cast<int>(get_integer(root["threads"], "threads"));
  if (root.contains("ucb")) {
    const json& u = require_object(root["ucb"], "ucb");
    reject_unknown(u, "ucb", {"initial_bonus", "index_update"});
    if (u.contains("initial_bonus")) {
      const json& b = u["initial_bonus"];
      if (b == "loop") {
        cfg.ucb.initial_bonus = InitialBonus::kLoopForm;
      } else if (b == "half_log") {
        cfg.ucb.initial_bonus = InitialBonus::kHalfLogForm;
      } else {
        fail("ucb.initial_bonus", "expected \"loop\" or \"half_log\"");
      }
    }
    if (u.contains("index_update")) {
      const json& b = u["index_update"];
      if (b == "every_round") {
        cfg.ucb.index_update = IndexUpdate::kEveryRound;
      } else if (b == "on_pull") {
        cfg.ucb.index_update = IndexUpdate::kOnPull;
      } else {
        fail("ucb.index_update", "expected \"every_round\" or \"on_pull\"");
      }
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

}  // namespace bidauction
