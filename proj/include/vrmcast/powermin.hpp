// Copyright 2026 The vrmcast Authors
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

#ifndef VRMCAST_POWERMIN_HPP
#define VRMCAST_POWERMIN_HPP

#include <utility>

#include "vrmcast/grouping.hpp"
#include "vrmcast/types.hpp"

namespace vrmcast {

/// Subcarrier/power/rate allocation for one (view state, channel) pair.
/// Each subcarrier carries exactly one group's symbols.
struct Allocation {
  std::vector<int> assignment;   // per subcarrier: 0-based group index
  std::vector<double> power_w;   // per subcarrier transmit power
  std::vector<double> rate_bps;  // per subcarrier rate
  double total_power_w = 0.0;
};

struct SubgradientOptions {
  long max_iters = 100000;
  double rel_tol = 1e-6;  // per-group rate residual, relative to D*S_i
};

struct PowerMinResult {
  Allocation allocation;
  double primal_power_w = 0.0;
  double dual_power_w = 0.0;
  std::vector<double> multipliers;  // lambda per group at the last iterate
  double lower_bound_w = 0.0;
  double upper_bound_w = 0.0;
  long iterations = 0;
  bool converged = false;
  bool unique_argmax = false;  // per-subcarrier argmax of W unique at convergence
};

/// N x I matrix of worst-user gains: entry (n,i) is the minimum of
/// H_{n,k} over the users of group i (the multicast rate bottleneck).
struct GainMatrix {
  int n = 0;
  int i = 0;
  std::vector<double> data;  // subcarrier-major
  double at(int sub, int group) const {
    return data[static_cast<size_t>(sub) * i + group];
  }
};

GainMatrix effective_gain(const GroupPartition& part, const ChannelState& ch);

struct WaterfillResult {
  std::vector<double> power_w;   // aligned with the subcarrier list
  std::vector<double> rate_bps;  // capacities at the worst-user gain
  double lambda = 0.0;
};

/// Minimum-power rate targeting over a fixed subcarrier set: powers take
/// the water-filling form [B*lambda/ln2 - n0/H]^+, with lambda found by
/// bisection so the summed capacity hits target_rate_bps.
WaterfillResult group_waterfill(const std::vector<int>& subcarriers,
                                const std::vector<double>& gains,
                                double target_rate_bps, const OfdmaConfig& cfg);

/// Minimum total power delivering encoding rate D to every group:
/// projected subgradient ascent on the per-group multipliers with the
/// closed-form per-subcarrier assignment metric, then a per-group
/// water-filling repair that restores the rate constraints exactly.
PowerMinResult solve(const GroupPartition& part, const ChannelState& ch,
                     double encoding_rate_bps, const OfdmaConfig& cfg,
                     const SubgradientOptions& opts = {});

/// Analytic lower/upper bounds on the optimal total power.
std::pair<double, double> power_bounds(const GroupPartition& part,
                                       const ChannelState& ch,
                                       double encoding_rate_bps,
                                       const OfdmaConfig& cfg);

/// Solves the instance on H and on H/g; the optimal powers satisfy
/// P(H/g) = g * P(H).
std::pair<double, double> scaling_check(const GroupPartition& part,
                                        const ChannelState& ch,
                                        double encoding_rate_bps,
                                        const OfdmaConfig& cfg, double g);

/// Verifies an allocation against all model constraints; throws
/// DomainError naming the violated constraint. rate_tightness_tol applies
/// to the per-group delivered-rate equality after repair.
void check_allocation(const Allocation& alloc, const GroupPartition& part,
                      const ChannelState& ch, double encoding_rate_bps,
                      const OfdmaConfig& cfg, double rel_tol = 1e-6,
                      double rate_tightness_tol = 1e-9);

}  // namespace vrmcast

#endif  // VRMCAST_POWERMIN_HPP
