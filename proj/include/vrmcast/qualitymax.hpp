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

#ifndef VRMCAST_QUALITYMAX_HPP
#define VRMCAST_QUALITYMAX_HPP

#include <cstdint>
#include <utility>

#include "vrmcast/grouping.hpp"
#include "vrmcast/types.hpp"

namespace vrmcast {

/// Quality-maximization scenario: the worst-case channel is the all-min
/// gain state, so only the smallest gain of the channel state space enters.
struct QualityScenario {
  VideoConfig video;
  OfdmaConfig ofdma;
  int users = 1;
  double budget_w = 1.0;  // total transmit power budget
  double min_gain = 1.0;  // smallest channel power in the state space
  void validate() const;
};

/// Total power needed to deliver rate D to every group when group i holds
/// counts[i] subcarriers, all at the worst-case gain.
double power_for(const GroupPartition& part, const std::vector<int>& counts,
                 double encoding_rate_bps, const OfdmaConfig& ofdma,
                 double min_gain);

struct RelaxedQuality {
  std::vector<double> counts;  // fractional subcarrier shares
  double rate_bps = 0.0;       // upper bound on the integer optimum
};

/// Closed-form optimum of the continuous relaxation: shares proportional
/// to group size, rate from the budget equation.
RelaxedQuality relaxed_quality(const GroupPartition& part, const OfdmaConfig& ofdma,
                               double budget_w, double min_gain);

enum class GreedyMetric {
  kAsPrinted,  // (S_i*ln2/B) * 2^{S_i/(B*N_i)}; exponent collapses at SI scale
  kRateAware,  // same with the relaxed rate estimate in the exponent (default)
};

struct GreedyQuality {
  std::vector<int> counts;
  double rate_bps = 0.0;
};

/// Floor the relaxed shares (clamped to >= 1), hand out leftover
/// subcarriers greedily, then bisect the rate against the power budget.
GreedyQuality greedy_quality(const GroupPartition& part, const OfdmaConfig& ofdma,
                             double budget_w, double min_gain,
                             GreedyMetric metric = GreedyMetric::kRateAware);

struct StateQuality {
  std::vector<ViewDirection> state;  // canonical (sorted) direction multiset
  std::vector<int> counts;
  double rate_bps = 0.0;
};

struct EnumOptions {
  long max_states = 200000;  // enumeration cap before sampling kicks in
  long sample = 0;           // 0 = exhaustive; >0 = sample this many states
  std::uint64_t seed = 0;    // sampling seed
  bool parallel = true;      // OpenMP over states; serial path kept for tests
  bool keep_per_state = true;
  GreedyMetric metric = GreedyMetric::kRateAware;
};

struct QualityResult {
  double rate_bps = 0.0;          // min over states of the greedy rate
  double relaxed_rate_bps = 0.0;  // relaxed rate at the worst state
  double lower_bound_bps = 0.0;
  double upper_bound_bps = 0.0;
  std::vector<ViewDirection> worst_state;
  std::vector<StateQuality> per_state;
  bool sampled = false;  // true = sampled lower-confidence estimate
  long n_states = 0;
  int worst_sum_s = 0;  // max over visited states of total tiles
  int worst_i = 0;      // max over visited states of group count
};

/// Worst-case common encoding rate over all system view states.
/// States are enumerated as unordered direction multisets (grouping is
/// user-permutation invariant); above the cap, a flagged sampling
/// fallback draws states uniformly instead.
QualityResult solve_quality(const QualityScenario& scn, const EnumOptions& opts = {});

/// Maximum rate sustainable with fixed per-group subcarrier counts under
/// the power budget; bisection on the monotone budget equation.
double rate_for_counts(const GroupPartition& part, const std::vector<int>& counts,
                       const OfdmaConfig& ofdma, double budget_w, double min_gain);

/// Shared view-state enumeration: canonical direction multisets (as linear
/// direction indices, non-decreasing) plus the per-direction tile cache.
struct StateEnumeration {
  std::vector<std::vector<int>> states;
  std::vector<TileSet> tiles_of;  // indexed by linear direction index
  bool sampled = false;
};

StateEnumeration enumerate_view_states(const VideoConfig& cfg, int users,
                                       const EnumOptions& opts);

/// Analytic bounds on the exact optimum, given the worst-state totals.
std::pair<double, double> quality_bounds(const QualityScenario& scn,
                                         int worst_sum_s, int worst_i);

}  // namespace vrmcast

#endif  // VRMCAST_QUALITYMAX_HPP
