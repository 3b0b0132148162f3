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
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bidauction/harness.hpp"
#include "bidauction/opt.hpp"
#include "bidauction/random.hpp"
#include "bidauction/ucb.hpp"
#include "bidauction/verify.hpp"
#include "bids_file.hpp"

namespace fs = std::filesystem;
using namespace bidauction;

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "JSON configuration file");
  cmd->add_option("--seed", opts.seed, "Master seed (overrides the configuration)");
  cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--threads", opts.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
}

ExperimentConfig load_config(const CommonOptions& opts) {
  ExperimentConfig cfg = opts.config_path.empty() ? ExperimentConfig{} : parse_config(opts.config_path);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.threads) cfg.threads = *opts.threads;
  cfg.validate();
  return cfg;
}

fs::path output_path(const CommonOptions& opts, const std::string& name) {
  fs::create_directories(opts.out_dir);
  return fs::path(opts.out_dir) / name;
}

MarketConfig market_for(const ExperimentConfig& cfg, const std::vector<Bid>& bids, int units) {
  int top = units;
  for (const Bid& b : bids) top = std::max(top, b.capacity);
  std::vector<TypeDistribution> dists;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    dists.push_back(TypeDistribution::uniform(cfg.distribution_for(static_cast<int>(i)).cost, {0, top}));
  }
  return MarketConfig(units, cfg.reward_scale, std::move(dists));
}

void write_outcome(const MechanismOutcome& outcome, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "agent,units,payment\n";
  char buf[64];
  for (std::size_t i = 0; i < outcome.payments.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", outcome.payments[i]);
    out << i << ',' << outcome.allocation.units[i] << ',' << buf << '\n';
  }
}

void print_outcome(const MechanismOutcome& outcome) {
  for (std::size_t i = 0; i < outcome.payments.size(); ++i) {
    std::printf("agent %zu: %d units, payment %.6f\n", i, outcome.allocation.units[i], outcome.payments[i]);
  }
  std::printf("auctioneer utility %.6f\n", outcome.auctioneer_utility);
}

int cmd_opt(const CommonOptions& opts, const std::string& bids_path, int units) {
  const ExperimentConfig cfg = load_config(opts);
  const cli::BidsFile file = cli::read_bids_file(bids_path);
  const MarketConfig market = market_for(cfg, file.bids, units);
  const MechanismOutcome outcome = run_2d_opt(market, file.qualities, file.bids);
  write_outcome(outcome, output_path(opts, "opt.csv"));
  print_outcome(outcome);
  return 0;
}

int cmd_ucb(const CommonOptions& opts, const std::string& bids_path, int units) {
  const ExperimentConfig cfg = load_config(opts);
  const cli::BidsFile file = cli::read_bids_file(bids_path);
  const MarketConfig market = market_for(cfg, file.bids, units);
  const RewardRealization realization =
      sample_reward_realization(file.qualities, units, derive_seed(cfg.seed, {1}));
  const LearningRun run = run_2d_ucb(market, file.bids, realization, TransformParams(cfg.mu),
                                     derive_seed(cfg.seed, {2}), cfg.ucb);
  const fs::path trace_path = output_path(opts, "trace.csv");
  std::ofstream trace(trace_path);
  if (!trace) throw std::runtime_error("cannot write '" + trace_path.string() + "'");
  write_trace_csv(run.trace, trace);
  write_outcome(run.outcome, output_path(opts, "ucb.csv"));
  for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';
  print_outcome(run.outcome);
  return 0;
}

int cmd_simulate(const CommonOptions& opts) {
  const ExperimentConfig cfg = load_config(opts);
  const std::vector<ResultRow> rows = run_experiment(cfg);
  emit_results(rows, output_path(opts, "results.csv"), output_path(opts, "results.svg"));
  for (const ResultRow& r : rows) {
    std::printf("%-28s L=%-7d %.6f +- %.6f\n", r.mechanism.c_str(), r.units, r.mean_utility_per_unit,
                r.standard_error);
  }
  return 0;
}

int cmd_plot(const CommonOptions& opts, const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open results CSV '" + csv_path + "'");
  const std::vector<ResultRow> rows = read_results_csv(in);
  const fs::path svg_path = output_path(opts, "results.svg");
  std::ofstream out(svg_path);
  if (!out) throw std::runtime_error("cannot write '" + svg_path.string() + "'");
  out << render_results_svg(rows);
  return 0;
}

int cmd_verify(const CommonOptions& opts, long bic_samples) {
  const ExperimentConfig cfg = load_config(opts);
  const TransformParams params(cfg.mu);
  const CostRange costs{0.0, 1.0};
  std::vector<AuditReport> reports;

  Rng rng(derive_seed(cfg.seed, {100}));
  for (int instance = 0; instance < 5; ++instance) {
    const int n = 3;
    const int units = 8;
    std::vector<TypeDistribution> dists(n, TypeDistribution::uniform(costs, {1, 6}));
    const MarketConfig market(units, 2.0, dists);
    std::vector<double> q;
    std::vector<Bid> bids;
    for (int i = 0; i < n; ++i) {
      q.push_back(0.5 + 0.5 * uniform01(rng));
      bids.push_back({uniform01(rng), 1 + static_cast<int>(uniform01(rng) * 6)});
    }
    const AgentType truth{bids[0].cost, bids[0].capacity, q[0]};
    const AuditInstance inst{bids, 0, truth, costs};
    const DeviationGrid grid = DeviationGrid::make(costs, 21, 1, truth.capacity);
    const ProfileMechanism mech = opt_mechanism(market, q);
    reports.push_back(audit_monotone_allocation(mech, inst, grid));
    reports.push_back(audit_offered_utility(mech, inst, grid));
    reports.push_back(audit_dsic(mech, inst, grid));
  }

  reports.push_back(audit_resampler(params, costs, 0.3, 100'000, derive_seed(cfg.seed, {200})));

  {
    const int n = 3;
    const int units = 20;
    std::vector<TypeDistribution> dists(n, TypeDistribution::uniform(costs, {1, 12}));
    const MarketConfig market(units, 3.0, dists);
    const std::vector<double> q{0.9, 0.7, 0.8};
    const std::vector<Bid> bids{{0.3, 10}, {0.5, 8}, {0.2, 6}};
    const AgentType truth{0.3, 10, 0.9};
    const AuditInstance inst{bids, 0, truth, costs};
    StochasticAuditOptions options;
    options.samples = bic_samples;
    options.seed = derive_seed(cfg.seed, {300});
    options.threads = cfg.threads;
    reports.push_back(audit_stochastic_bic(ucb_mechanism(market, q, params, cfg.ucb),
                                           inst, DeviationGrid::make(costs, 6, 6, truth.capacity), options));
  }

  const fs::path text_path = output_path(opts, "audit.txt");
  const fs::path record_path = output_path(opts, "audit.jsonl");
  std::ofstream text(text_path);
  std::ofstream records(record_path);
  if (!text || !records) throw std::runtime_error("cannot write audit output in '" + opts.out_dir + "'");
  int failures = 0;
  for (const AuditReport& r : reports) {
    text << to_text(r) << '\n';
    records << to_record(r) << '\n';
    std::printf("%-13s %s\n", to_string(r.status), r.property.c_str());
    if (r.status == AuditStatus::kFail) ++failures;
  }
  std::printf("%zu audits, %d failed\n", reports.size(), failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procurement auctions with quality learning"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string bids_path;
  std::string csv_path;
  int units = 0;
  long bic_samples = 2000;

  CLI::App* opt = app.add_subcommand("opt", "Run 2D-OPT on a bids file");
  CLI::App* ucb = app.add_subcommand("ucb", "Run one 2D-UCB auction and write its trace");
  for (CLI::App* cmd : {opt, ucb}) {
    add_common(cmd, common);
    cmd->add_option("--bids", bids_path, "CSV with columns agent,cost,capacity,quality")->required();
    cmd->add_option("--units", units, "Units to procure (L)")->required()->check(CLI::NonNegativeNumber);
  }
  CLI::App* simulate = app.add_subcommand("simulate", "Run the full experiment grid");
  add_common(simulate, common);
  CLI::App* verify = app.add_subcommand("verify", "Run the incentive and resampler audits");
  add_common(verify, common);
  verify->add_option("--samples", bic_samples, "Samples for the stochastic audit")->capture_default_str();
  CLI::App* plot = app.add_subcommand("plot", "Render a results CSV as SVG");
  add_common(plot, common);
  plot->add_option("--csv", csv_path, "Results CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (opt->parsed()) return cmd_opt(common, bids_path, units);
    if (ucb->parsed()) return cmd_ucb(common, bids_path, units);
    if (simulate->parsed()) return cmd_simulate(common);
    if (verify->parsed()) return cmd_verify(common, bic_samples);
    if (plot->parsed()) return cmd_plot(common, csv_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
