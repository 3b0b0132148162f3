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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bidauction/model.hpp"
#include "bidauction/opt.hpp"
#include "bidauction/resample.hpp"
#include "bidauction/ucb.hpp"

namespace bidauction {

enum class AuditStatus { kPass, kFail, kInconclusive };

const char* to_string(AuditStatus status);

/// Outcome of one property audit. `status` is kFail exactly when
/// `worst_violation` exceeds `tolerance` (or the statistical threshold the
/// audit documents in `notes`).
struct AuditReport {
  std::string property;
  AuditStatus status = AuditStatus::kPass;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  std::string witness;  // deviating bid profile, when any
  long samples = 0;
  double confidence = 0.0;  // standard errors or significance level, per audit
  std::string notes;

  bool passed() const { return status == AuditStatus::kPass; }
};

/// Multi-line human-readable block.
std::string to_text(const AuditReport& report);
/// One JSON object on a single line.
std::string to_record(const AuditReport& report);

/// Cost and capacity misreports for one agent. Capacities never exceed the
/// agent's true capacity.
struct DeviationGrid {
  std::vector<double> costs;
  std::vector<int> capacities;

  /// `cost_points` evenly spaced costs over `bounds` (endpoints included)
  /// and every capacity in [capacity_lo, true_capacity].
  static DeviationGrid make(CostRange bounds, int cost_points, int capacity_lo,
                            int true_capacity);
  static DeviationGrid truth_only(const AgentType& truth);
};

/// Profile of bids plus the audited agent and its true type. `bids[agent]`
/// is the truthful bid.
struct AuditInstance {
  std::vector<Bid> bids;
  int agent = 0;
  AgentType truth;
  CostRange bounds;
};

/// Deterministic per-profile mechanism.
using ProfileMechanism = std::function<MechanismOutcome(std::span<const Bid> bids)>;

/// Randomized mechanism. All randomness (reward realization, resampling, and
/// optionally other agents' bids) must come from `sample_seed`; audits pass
/// the same seed to every deviation.
using SampledMechanism =
    std::function<MechanismOutcome(std::span<const Bid> bids, std::uint64_t sample_seed)>;

/// 2D-OPT at fixed true qualities.
ProfileMechanism opt_mechanism(MarketConfig config, std::vector<double> qualities);

/// 2D-UCB where `sample_seed` drives the reward table (drawn from
/// `qualities`) and the resampler through separate derived streams.
SampledMechanism ucb_mechanism(MarketConfig config, std::vector<double> qualities,
                               TransformParams params, UcbOptions options = {});

/// Allocation to the agent is non-increasing along the cost grid, for every
/// capacity in the grid.
AuditReport audit_monotone_allocation(const ProfileMechanism& mechanism,
                                      const AuditInstance& instance, const DeviationGrid& grid);

/// Offered utility rho = t - c x: non-negative, non-decreasing in capacity,
/// and rho(c) - rho(c_hi) equal to the integral of the allocation over
/// [c, c_hi] (located step function, `tolerance` absolute).
AuditReport audit_offered_utility(const ProfileMechanism& mechanism, const AuditInstance& instance,
                                  const DeviationGrid& grid, double tolerance = 1e-6);

/// Truthful utility is at least every grid deviation's utility minus
/// `tolerance`.
AuditReport audit_dsic(const ProfileMechanism& mechanism, const AuditInstance& instance,
                       const DeviationGrid& grid, double tolerance = 1e-9);

struct StochasticAuditOptions {
  long samples = 10'000;
  std::uint64_t seed = 1;
  int threads = 0;
  double standard_errors = 3.0;
  long min_samples = 100;  // fewer samples report inconclusive
};

/// Mean truthful utility is at least every deviation's mean utility minus
/// `standard_errors` paired standard errors, with common random numbers
/// across deviations.
AuditReport audit_stochastic_bic(const SampledMechanism& mechanism, const AuditInstance& instance,
                                 const DeviationGrid& grid, const StochasticAuditOptions& options);

struct ResamplerAudit {
  AuditReport report;
  double keep_fraction = 0.0;      // empirical P(beta == bid)
  double keep_tolerance = 0.0;     // 3 binomial standard deviations
  long ordering_violations = 0;    // draws outside the two allowed branches
  long monotone_violations = 0;    // coupled draws decreasing in the bid
  double uniform_ks_p = 0.0;       // beta | beta > bid vs uniform
  double memoryless_min_p = 0.0;   // smallest per-bin two-sample p-value
  int memoryless_bins = 0;
};

/// Distributional checks of the self-resampler at significance
/// `significance`: branch probabilities, conditional uniformity of beta,
/// memorylessness of alpha given beta, and coupled monotonicity in the bid.
ResamplerAudit audit_resampler_detailed(TransformParams params, CostRange bounds, double bid_cost,
                                        long samples, std::uint64_t seed,
                                        double significance = 0.01);

AuditReport audit_resampler(TransformParams params, CostRange bounds, double bid_cost, long samples,
                            std::uint64_t seed);

/// Integral of a piecewise-constant function over [a, b]; jumps are located
/// by bisection between `scan_points` evenly spaced probes.
double step_integral(const std::function<double(double)>& fn, double a, double b,
                     int scan_points = 256);

}  // namespace bidauction
