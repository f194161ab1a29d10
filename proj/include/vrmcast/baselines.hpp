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

#ifndef VRMCAST_BASELINES_HPP
#define VRMCAST_BASELINES_HPP

#include "vrmcast/powermin.hpp"
#include "vrmcast/qualitymax.hpp"

namespace vrmcast {

enum class BaselineKind {
  kUnicast,          // one independent session per user, tiles duplicated
  kEqualSubcarrier,  // multicast groups, subcarrier counts proportional to size
};

/// One group per user carrying that user's full tile set. Tiles shared by
/// several users appear in several groups; the solvers treat groups
/// opaquely, so each group is an independent unicast session.
GroupPartition unicast_partition(const std::vector<TileSet>& per_user);

/// Per-tile equal subcarrier shares: largest-remainder apportionment of N
/// over the group sizes, every group guaranteed at least one subcarrier.
std::vector<int> equal_subcarrier_counts(const GroupPartition& part, int n_subcarriers);

/// Round-robin placement for fixed counts: each group repeatedly takes its
/// best remaining subcarrier by worst-user gain until its count is met.
std::vector<int> equal_subcarrier_assignment(const GroupPartition& part,
                                             const GainMatrix& gm,
                                             const std::vector<int>& counts);

/// Total power the baseline needs to deliver encoding rate D at (state, ch).
double baseline_power(BaselineKind kind, const SystemViewState& state,
                      const ChannelState& ch, double encoding_rate_bps,
                      const VideoConfig& cfg, const OfdmaConfig& ofdma);

/// Worst-case encoding rate of the baseline over all view states.
double baseline_quality(BaselineKind kind, const QualityScenario& scn,
                        const EnumOptions& opts = {});

}  // namespace vrmcast

#endif  // VRMCAST_BASELINES_HPP
