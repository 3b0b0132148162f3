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

#include "bidauction/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "bidauction/parallel.hpp"
#include "bidauction/random.hpp"
#include "bidauction/stats.hpp"

namespace bidauction {

namespace {

constexpr long kSamplesPerBlock = 256;

std::string describe(const AuditInstance& inst, double cost, int capacity) {
  std::ostringstream os;
  os.precision(12);
  os << "agent " << inst.agent << " true (" << inst.truth.cost << ", " << inst.truth.capacity
     << ") reports (" << cost << ", " << capacity << "); others:";
  for (std::size_t j = 0; j < inst.bids.size(); ++j) {
    if (static_cast<int>(j) == inst.agent) continue;
    os << " [" << j << ": " << inst.bids[j].cost << ", " << inst.bids[j].capacity << "]";
  }
  return os.str();
}

std::vector<Bid> with_bid(const AuditInstance& inst, double cost, int capacity) {
  std::vector<Bid> bids = inst.bids;
  bids.at(static_cast<std::size_t>(inst.agent)) = {cost, capacity};
  return bids;
}

struct Realized {
  int units;
  double payment;
};

Realized evaluate(const ProfileMechanism& mech, const AuditInstance& inst, double cost,
                  int capacity) {
  const std::vector<Bid> bids = with_bid(inst, cost, capacity);
  const MechanismOutcome out = mech(bids);
  const auto i = static_cast<std::size_t>(inst.agent);
  return {out.allocation.units.at(i), out.payments.at(i)};
}

void finalize(AuditReport& report) {
  report.status = report.worst_violation > report.tolerance ? AuditStatus::kFail : AuditStatus::kPass;
}

double integrate_cell(const std::function<double(double)>& fn, double l, double r, double fl,
                      double fr, int depth) {
  if (fl == fr) return (r - l) * fl;
  if (r - l <= 1e-13 * std::max(1.0, std::abs(r)) || depth > 80) return 0.5 * (r - l) * (fl + fr);
  const double m = 0.5 * (l + r);
  const double fm = fn(m);
  return integrate_cell(fn, l, m, fl, fm, depth + 1) + integrate_cell(fn, m, r, fm, fr, depth + 1);
}

}  // namespace

ProfileMechanism opt_mechanism(MarketConfig config, std::vector<double> qualities) {
  return [config = std::move(config), qualities = std::move(qualities)](std::span<const Bid> bids) {
    return run_2d_opt(config, qualities, bids);
  };
}

SampledMechanism ucb_mechanism(MarketConfig config, std::vector<double> qualities,
                               TransformParams params, UcbOptions options) {
  return [config = std::move(config), qualities = std::move(qualities), params, options](
             std::span<const Bid> bids, std::uint64_t sample_seed) {
    const RewardRealization realization =
        sample_reward_realization(qualities, config.units(), derive_seed(sample_seed, {1}));
    return run_2d_ucb(config, bids, realization, params, derive_seed(sample_seed, {2}), options)
        .outcome;
  };
}

const char* to_string(AuditStatus status) {
  switch (status) {
    case AuditStatus::kPass:
      return "pass";
    case AuditStatus::kFail:
      return "fail";
    case AuditStatus::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string to_text(const AuditReport& r) {
  std::ostringstream os;
  os.precision(10);
  os << "audit: " << r.property << '\n'
     << "  status:          " << to_string(r.status) << '\n'
     << "  worst violation: " << r.worst_violation << " (tolerance " << r.tolerance << ")\n"
     << "  samples:         " << r.samples << '\n'
     << "  confidence:      " << r.confidence << '\n';
  if (!r.witness.empty()) os << "  witness:         " << r.witness << '\n';
  if (!r.notes.empty()) os << "  notes:           " << r.notes << '\n';
  return os.str();
}

std::string to_record(const AuditReport& r) {
  nlohmann::json j = {{"property", r.property},
                      {"status", to_string(r.status)},
                      {"worst_violation", r.worst_violation},
                      {"tolerance", r.tolerance},
                      {"samples", r.samples},
                      {"confidence", r.confidence},
                      {"witness", r.witness},
                      {"notes", r.notes}};
  return j.dump();
}

DeviationGrid DeviationGrid::make(CostRange bounds, int cost_points, int capacity_lo,
                                  int true_capacity) {
  if (cost_points < 1) throw std::invalid_argument("cost grid needs at least one point");
  if (capacity_lo > true_capacity) {
    throw std::invalid_argument("capacity grid is empty: lower bound above true capacity");
  }
  DeviationGrid g;
  for (int j = 0; j < cost_points; ++j) {
    if (cost_points == 1) {
      g.costs.push_back(bounds.lo);
    } else if (j + 1 == cost_points) {
      g.costs.push_back(bounds.hi);
    } else {
      g.costs.push_back(bounds.lo + bounds.width() * j / (cost_points - 1));
    }
  }
  for (int k = capacity_lo; k <= true_capacity; ++k) g.capacities.push_back(k);
  return g;
}

DeviationGrid DeviationGrid::truth_only(const AgentType& truth) {
  return {{truth.cost}, {truth.capacity}};
}

double step_integral(const std::function<double(double)>& fn, double a, double b,
                     int scan_points) {
  if (!(b > a)) return 0.0;
  scan_points = std::max(scan_points, 2);
  double total = 0.0;
  double prev_x = a;
  double prev_f = fn(a);
  for (int j = 1; j < scan_points; ++j) {
    const double x = j + 1 == scan_points ? b : a + (b - a) * j / (scan_points - 1);
    const double f = fn(x);
    total += integrate_cell(fn, prev_x, x, prev_f, f, 0);
    prev_x = x;
    prev_f = f;
  }
  return total;
}

AuditReport audit_monotone_allocation(const ProfileMechanism& mechanism,
                                      const AuditInstance& instance, const DeviationGrid& grid) {
  AuditReport report;
  report.property = "allocation non-increasing in reported cost";
  std::vector<double> costs = grid.costs;
  std::sort(costs.begin(), costs.end());
  for (int k : grid.capacities) {
    int previous = std::numeric_limits<int>::max();
    double previous_cost = 0.0;
    for (double c : costs) {
      const int units = evaluate(mechanism, instance, c, k).units;
      ++report.samples;
      if (units > previous && units - previous > report.worst_violation) {
        report.worst_violation = units - previous;
        std::ostringstream os;
        os << describe(instance, c, k) << "; units rise from " << previous << " at cost "
           << previous_cost << " to " << units;
        report.witness = os.str();
      }
      previous = units;
      previous_cost = c;
    }
  }
  finalize(report);
  return report;
}

AuditReport audit_offered_utility(const ProfileMechanism& mechanism, const AuditInstance& instance,
                                  const DeviationGrid& grid, double tolerance) {
  AuditReport report;
  report.property = "offered utility: non-negative, capacity-monotone, integral identity";
  report.tolerance = tolerance;
  const double top = instance.bounds.hi;

  auto note = [&](double violation, const std::string& what) {
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      report.witness = what;
    }
  };

  std::vector<int> caps = grid.capacities;
  std::sort(caps.begin(), caps.end());
  for (double c : grid.costs) {
    double previous_rho = -std::numeric_limits<double>::infinity();
    for (int k : caps) {
      const Realized at = evaluate(mechanism, instance, c, k);
      const double rho = at.payment - c * at.units;
      ++report.samples;
      note(-rho, describe(instance, c, k) + "; negative offered utility");
      note(previous_rho - rho, describe(instance, c, k) + "; offered utility drops with capacity");
      previous_rho = rho;

      const Realized at_top = evaluate(mechanism, instance, top, k);
      const double rho_top = at_top.payment - top * at_top.units;
      const double area = step_integral(
          [&](double z) { return static_cast<double>(evaluate(mechanism, instance, z, k).units); }, c,
          top);
      std::ostringstream os;
      os.precision(12);
      os << describe(instance, c, k) << "; rho - rho(c_hi) = " << rho - rho_top
         << " but integral = " << area;
      note(std::abs(rho - rho_top - area), os.str());
    }
  }
  finalize(report);
  return report;
}

AuditReport audit_dsic(const ProfileMechanism& mechanism, const AuditInstance& instance,
                       const DeviationGrid& grid, double tolerance) {
  AuditReport report;
  report.property = "truthful reporting is a dominant strategy";
  report.tolerance = tolerance;
  const double c = instance.truth.cost;
  const Realized truthful = evaluate(mechanism, instance, c, instance.truth.capacity);
  const double u_truth = truthful.payment - c * truthful.units;
  for (int k : grid.capacities) {
    if (k > instance.truth.capacity) throw std::invalid_argument("grid over-reports capacity");
    for (double cost : grid.costs) {
      const Realized dev = evaluate(mechanism, instance, cost, k);
      const double gain = dev.payment - c * dev.units - u_truth;
      ++report.samples;
      if (gain > report.worst_violation) {
        report.worst_violation = gain;
        std::ostringstream os;
        os.precision(12);
        os << describe(instance, cost, k) << "; gains " << gain << " over truth";
        report.witness = os.str();
      }
    }
  }
  finalize(report);
  return report;
}

AuditReport audit_stochastic_bic(const SampledMechanism& mechanism, const AuditInstance& instance,
                                 const DeviationGrid& grid, const StochasticAuditOptions& options) {
  AuditReport report;
  report.property = "truthful reporting maximizes expected utility";
  report.confidence = options.standard_errors;
  report.samples = options.samples;
  std::ostringstream notes;
  notes << "paired differences, " << options.standard_errors << " standard errors";

  if (options.samples < options.min_samples) {
    report.status = AuditStatus::kInconclusive;
    notes << "; only " << options.samples << " samples (need " << options.min_samples << ")";
    report.notes = notes.str();
    return report;
  }

  struct Deviation {
    double cost;
    int capacity;
  };
  std::vector<Deviation> devs;
  for (int k : grid.capacities) {
    if (k > instance.truth.capacity) throw std::invalid_argument("grid over-reports capacity");
    for (double cost : grid.costs) devs.push_back({cost, k});
  }

  const double c = instance.truth.cost;
  const auto i = static_cast<std::size_t>(instance.agent);
  const std::vector<Bid> truthful_bids = with_bid(instance, c, instance.truth.capacity);
  std::vector<std::vector<Bid>> dev_bids;
  dev_bids.reserve(devs.size());
  for (const Deviation& d : devs) dev_bids.push_back(with_bid(instance, d.cost, d.capacity));

  const auto samples = static_cast<std::size_t>(options.samples);
  const std::size_t blocks = (samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
  std::vector<std::vector<RunningStats>> partial(blocks, std::vector<RunningStats>(devs.size()));
  parallel_for(blocks, options.threads, [&](std::size_t b) {
    const std::size_t begin = b * kSamplesPerBlock;
    const std::size_t end = std::min(samples, begin + kSamplesPerBlock);
    for (std::size_t s = begin; s < end; ++s) {
      const std::uint64_t seed = derive_seed(options.seed, {s});
      const MechanismOutcome truth = mechanism(truthful_bids, seed);
      const double u_truth = truth.payments.at(i) - c * truth.allocation.units.at(i);
      for (std::size_t d = 0; d < devs.size(); ++d) {
        const MechanismOutcome dev = mechanism(dev_bids[d], seed);
        partial[b][d].add(u_truth - (dev.payments.at(i) - c * dev.allocation.units.at(i)));
      }
    }
  });

  double worst_z = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < devs.size(); ++d) {
    RunningStats total;
    for (std::size_t b = 0; b < blocks; ++b) total.merge(partial[b][d]);
    const double mean = total.mean();
    const double se = total.standard_error();
    const double violation = -(mean + options.standard_errors * se);
    if (se > 0.0) worst_z = std::min(worst_z, mean / se);
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      std::ostringstream os;
      os.precision(10);
      os << describe(instance, devs[d].cost, devs[d].capacity) << "; mean gain of deviating "
         << -mean << " (paired SE " << se << ")";
      report.witness = os.str();
    }
  }
  if (std::isfinite(worst_z)) notes << "; smallest truth-minus-deviation z = " << worst_z;
  report.notes = notes.str();
  finalize(report);
  return report;
}

ResamplerAudit audit_resampler_detailed(TransformParams params, CostRange bounds, double bid_cost,
                                        long samples, std::uint64_t seed, double significance) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  ResamplerAudit out;
  AuditReport& report = out.report;
  report.property = "self-resampling distribution";
  report.samples = samples;
  report.confidence = significance;

  const double mu = params.mu();
  const bool degenerate = !(bid_cost < bounds.hi);
  Rng rng(seed);
  long kept = 0;
  std::vector<double> betas;
  std::vector<double> ratios;  // (c_hi - alpha) / (c_hi - beta) on the moved branch
  for (long s = 0; s < samples; ++s) {
    const ResampleDraw d = self_resample(bid_cost, bounds, params, rng);
    const bool stay = d.alpha == bid_cost && d.beta == bid_cost;
    const bool moved = bounds.hi >= d.alpha && d.alpha >= d.beta && d.beta > bid_cost;
    if (!stay && !moved) ++out.ordering_violations;
    if (d.beta == bid_cost) {
      ++kept;
    } else {
      betas.push_back(d.beta);
      ratios.push_back((bounds.hi - d.alpha) / (bounds.hi - d.beta));
    }
  }
  const double expected_keep = degenerate ? 1.0 : 1.0 - mu;
  out.keep_fraction = static_cast<double>(kept) / static_cast<double>(samples);
  out.keep_tolerance = 3.0 * std::sqrt(expected_keep * (1.0 - expected_keep) / samples);
  const bool keep_ok = std::abs(out.keep_fraction - expected_keep) <= out.keep_tolerance;

  // beta | beta > bid should be uniform on [bid, c_hi].
  out.uniform_ks_p = 1.0;
  if (!betas.empty()) {
    const double width = bounds.hi - bid_cost;
    const double d = ks_statistic(betas, [&](double b) {
      return std::clamp((b - bid_cost) / width, 0.0, 1.0);
    });
    out.uniform_ks_p = ks_p_value(d, betas.size());
  }

  // alpha given beta = c' has the law of a fresh draw at c'. Compared on the
  // scale-free ratio (c_hi - alpha) / (c_hi - c'), per quartile of beta,
  // against fresh draws at uniformly placed c'.
  out.memoryless_min_p = 1.0;
  if (betas.size() >= 40) {
    out.memoryless_bins = 4;
    std::vector<std::size_t> order(betas.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return betas[a] < betas[b]; });
    std::vector<double> reference;
    Rng ref_rng(mix64(seed ^ 0x5bd1e995ULL));
    while (reference.size() < betas.size()) {
      const double start = bid_cost + (1.0 - uniform01(ref_rng)) * (bounds.hi - bid_cost);
      if (!(start < bounds.hi)) continue;
      const ResampleDraw fresh = self_resample(start, bounds, params, ref_rng);
      reference.push_back((bounds.hi - fresh.alpha) / (bounds.hi - start));
    }
    const std::size_t per_bin = order.size() / static_cast<std::size_t>(out.memoryless_bins);
    for (int bin = 0; bin < out.memoryless_bins; ++bin) {
      const std::size_t begin = static_cast<std::size_t>(bin) * per_bin;
      const std::size_t end = bin + 1 == out.memoryless_bins ? order.size() : begin + per_bin;
      std::vector<double> group;
      for (std::size_t j = begin; j < end; ++j) group.push_back(ratios[order[j]]);
      const double d = ks_statistic(group, reference);
      out.memoryless_min_p = std::min(out.memoryless_min_p, ks_p_value(d, group.size(), reference.size()));
    }
  }
  const double memoryless_level =
      out.memoryless_bins > 0 ? significance / out.memoryless_bins : significance;

  // Coupled draws across a bid grid must be monotone.
  const long coupled = std::min<long>(samples, 10'000);
  constexpr int kGrid = 11;
  for (long s = 0; s < coupled; ++s) {
    const std::uint64_t stream = derive_seed(seed, {static_cast<std::uint64_t>(s), 7});
    ResampleDraw previous{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int j = 0; j < kGrid; ++j) {
      const double c = bounds.lo + bounds.width() * j / (kGrid - 1);
      const ResampleDraw d = self_resample(std::min(c, bounds.hi), bounds, params, stream);
      if (d.alpha < previous.alpha || d.beta < previous.beta) ++out.monotone_violations;
      previous = d;
    }
  }

  int failures = 0;
  std::ostringstream notes;
  notes.precision(6);
  notes << "P(beta=bid)=" << out.keep_fraction << " vs " << expected_keep << " +/- "
        << out.keep_tolerance << (keep_ok ? " ok" : " FAIL");
  failures += keep_ok ? 0 : 1;
  notes << "; branch violations=" << out.ordering_violations;
  failures += out.ordering_violations == 0 ? 0 : 1;
  notes << "; uniform KS p=" << out.uniform_ks_p << (out.uniform_ks_p >= significance ? " ok" : " FAIL");
  failures += out.uniform_ks_p >= significance ? 0 : 1;
  notes << "; memoryless min p=" << out.memoryless_min_p << " over " << out.memoryless_bins
        << " bins (level " << memoryless_level << ")"
        << (out.memoryless_min_p >= memoryless_level ? " ok" : " FAIL");
  failures += out.memoryless_min_p >= memoryless_level ? 0 : 1;
  notes << "; coupled monotonicity violations=" << out.monotone_violations;
  failures += out.monotone_violations == 0 ? 0 : 1;

  report.notes = notes.str();
  report.worst_violation = failures;
  report.tolerance = 0.0;
  finalize(report);
  return out;
}

AuditReport audit_resampler(TransformParams params, CostRange bounds, double bid_cost, long samples,
                            std::uint64_t seed) {
  return audit_resampler_detailed(params, bounds, bid_cost, samples, seed).report;
}

}  // namespace bidauction
