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

#ifndef VRMCAST_ORACLE_HPP
#define VRMCAST_ORACLE_HPP

#include "vrmcast/powermin.hpp"
#include "vrmcast/qualitymax.hpp"

namespace vrmcast {

/// Enumeration caps for the brute-force solvers; they refuse rather than
/// run away on instances beyond desk scale.
struct OracleBudget {
  int max_subcarriers = 8;
  int max_groups = 4;
  long max_assignments = 2000000;
};

/// Raised when an instance exceeds the oracle budget.
struct OracleBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExhaustivePowerMin {
  double power_w = 0.0;
  std::vector<int> assignment;  // per subcarrier group index
};

/// Exact power-minimization optimum by enumerating every subcarrier-to-group
/// assignment and water-filling each group. Assignments that starve a
/// non-empty group are infeasible and skipped.
ExhaustivePowerMin exhaustive_powermin(const GroupPartition& part,
                                       const ChannelState& ch,
                                       double encoding_rate_bps,
                                       const OfdmaConfig& cfg,
                                       const OracleBudget& budget = {});

/// Exact integer optimum of the per-state quality subproblem by enumerating
/// every count vector with N_i >= 1 and sum <= N.
double exhaustive_quality(const GroupPartition& part, const OfdmaConfig& ofdma,
                          double budget_w, double min_gain,
                          const OracleBudget& budget = {});

}  // namespace vrmcast

#endif  // VRMCAST_ORACLE_HPP
