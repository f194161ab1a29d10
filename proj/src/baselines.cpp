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

#include "vrmcast/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace vrmcast {

GroupPartition unicast_partition(const std::vector<TileSet>& per_user) {
  if (per_user.empty()) throw DomainError("unicast_partition: K must be >= 1");
  GroupPartition part;
  for (size_t k = 0; k < per_user.size(); ++k) {
    if (per_user[k].empty()) continue;
    part.groups.push_back(Group{per_user[k], {static_cast<int>(k)}});
    part.total_tiles += static_cast<int>(per_user[k].size());
  }
  if (part.groups.empty()) throw InfeasibleError("unicast_partition: no tiles to transmit");
  return part;
}

std::vector<int> equal_subcarrier_counts(const GroupPartition& part, int n_subcarriers) {
  const int I = part.group_count();
  if (I > n_subcarriers)
    throw InfeasibleError("equal_subcarrier_counts: more groups than subcarriers");

  std::vector<int> counts(I);
  std::vector<double> remainder(I);
  int assigned = 0;
  for (int i = 0; i < I; ++i) {
    double share = static_cast<double>(n_subcarriers) * part.groups[i].size() /
                   part.total_tiles;
    counts[i] = static_cast<int>(std::floor(share));
    remainder[i] = share - counts[i];
    assigned += counts[i];
  }
  // largest remainder first; ties -> lowest group index
  std::vector<int> order(I);
  for (int i = 0; i < I; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return remainder[a] > remainder[b]; });
  for (int j = 0; assigned < n_subcarriers; ++j) {
    ++counts[order[j % I]];
    ++assigned;
  }
  // clamp zero-count groups, taking from the largest holder
  for (int i = 0; i < I; ++i) {
    while (counts[i] == 0) {
      int donor = static_cast<int>(std::max_element(counts.begin(), counts.end()) -
                                   counts.begin());
      --counts[donor];
      ++counts[i];
    }
  }
  return counts;
}

// Round-robin over groups (index order); each group takes its best
// remaining subcarrier by its own worst-user gain until its count is met.
std::vector<int> equal_subcarrier_assignment(const GroupPartition& part,
                                             const GainMatrix& gm,
                                             const std::vector<int>& counts) {
  const int N = gm.n;
  const int I = gm.i;
  std::vector<int> assignment(N, -1);
  std::vector<int> left(counts);
  int remaining = N;
  while (remaining > 0) {
    for (int i = 0; i < I && remaining > 0; ++i) {
      if (left[i] == 0) continue;
      int best_n = -1;
      for (int n = 0; n < N; ++n) {
        if (assignment[n] >= 0) continue;
        if (best_n < 0 || gm.at(n, i) > gm.at(best_n, i)) best_n = n;
      }
      assignment[best_n] = i;
      --left[i];
      --remaining;
    }
  }
  return assignment;
}

double baseline_power(BaselineKind kind, const SystemViewState& state,
                      const ChannelState& ch, double encoding_rate_bps,
                      const VideoConfig& cfg, const OfdmaConfig& ofdma) {
  std::vector<TileSet> per_user = required_tiles(state, cfg);
  switch (kind) {
    case BaselineKind::kUnicast: {
      GroupPartition part = unicast_partition(per_user);
      return solve(part, ch, encoding_rate_bps, ofdma).primal_power_w;
    }
    case BaselineKind::kEqualSubcarrier: {
      GroupPartition part = partition(per_user);
      GainMatrix gm = effective_gain(part, ch);
      std::vector<int> counts = equal_subcarrier_counts(part, ofdma.n_subcarriers);
      std::vector<int> assignment = equal_subcarrier_assignment(part, gm, counts);
      double total = 0.0;
      for (int i = 0; i < part.group_count(); ++i) {
        std::vector<int> subs;
        std::vector<double> gains;
        for (int n = 0; n < gm.n; ++n)
          if (assignment[n] == i) {
            subs.push_back(n);
            gains.push_back(gm.at(n, i));
          }
        WaterfillResult wf = group_waterfill(
            subs, gains, encoding_rate_bps * part.groups[i].size(), ofdma);
        for (double p : wf.power_w) total += p;
      }
      return total;
    }
  }
  throw DomainError("baseline_power: unknown baseline kind");
}

double baseline_quality(BaselineKind kind, const QualityScenario& scn,
                        const EnumOptions& opts) {
  scn.validate();
  StateEnumeration e = enumerate_view_states(scn.video, scn.users, opts);
  const long n = static_cast<long>(e.states.size());
  std::vector<double> rates(n);

  auto eval_state = [&](long s) {
    std::vector<TileSet> per_user;
    per_user.reserve(scn.users);
    for (int d : e.states[s]) per_user.push_back(e.tiles_of[d]);
    switch (kind) {
      case BaselineKind::kUnicast: {
        GroupPartition part = unicast_partition(per_user);
        rates[s] = greedy_quality(part, scn.ofdma, scn.budget_w, scn.min_gain,
                                  opts.metric)
                       .rate_bps;
        break;
      }
      case BaselineKind::kEqualSubcarrier: {
        GroupPartition part = partition(per_user);
        std::vector<int> counts =
            equal_subcarrier_counts(part, scn.ofdma.n_subcarriers);
        rates[s] =
            rate_for_counts(part, counts, scn.ofdma, scn.budget_w, scn.min_gain);
        break;
      }
    }
  };

  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (long s = 0; s < n; ++s) eval_state(s);
  } else {
    for (long s = 0; s < n; ++s) eval_state(s);
  }

  double worst = rates[0];
  for (long s = 1; s < n; ++s) worst = std::min(worst, rates[s]);
  return worst;
}

}  // namespace vrmcast
