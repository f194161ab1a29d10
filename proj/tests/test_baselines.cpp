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

#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "vrmcast/baselines.hpp"
#include "vrmcast/sim.hpp"

using namespace vrmcast;

TEST_CASE("unicast_partition duplicates shared tiles") {
  // A={1,2}, B={2,3}: union is 3 tiles, unicast carries 4
  GroupPartition part = unicast_partition({{1, 2}, {2, 3}});
  REQUIRE(part.group_count() == 2);
  CHECK(part.total_tiles == 4);
  CHECK(part.groups[0].tiles == TileSet{1, 2});
  CHECK(part.groups[0].users == std::vector<int>{0});
  CHECK(part.groups[1].tiles == TileSet{2, 3});
  CHECK(part.groups[1].users == std::vector<int>{1});
}

TEST_CASE("unicast_partition skips empty user sets") {
  GroupPartition part = unicast_partition({{}, {5}});
  REQUIRE(part.group_count() == 1);
  CHECK(part.groups[0].users == std::vector<int>{1});
  CHECK_THROWS_AS(unicast_partition({{}, {}}), InfeasibleError);
}

TEST_CASE("equal_subcarrier_counts apportionment examples") {
  {
    GroupPartition part = unicast_partition({{1}, {2}});
    CHECK(equal_subcarrier_counts(part, 4) == std::vector<int>{2, 2});
  }
  {
    GroupPartition part = unicast_partition({{1}, {2, 3, 4}});
    CHECK(equal_subcarrier_counts(part, 4) == std::vector<int>{1, 3});
  }
  {
    // tiny share clamped up to 1, taken from the largest holder
    GroupPartition part = unicast_partition({{1, 2, 3, 4, 5, 6, 7}, {8}});
    std::vector<int> counts = equal_subcarrier_counts(part, 2);
    CHECK(counts == std::vector<int>{1, 1});
  }
}

TEST_CASE("equal_subcarrier_counts invariants on random sizes") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    int n_groups = 1 + static_cast<int>(rng() % 4);
    std::vector<TileSet> per_user(n_groups);
    int next = 1;
    for (TileSet& ts : per_user) {
      int s = 1 + static_cast<int>(rng() % 6);
      for (int j = 0; j < s; ++j) ts.push_back(next++);
    }
    GroupPartition part = unicast_partition(per_user);
    int n = n_groups + static_cast<int>(rng() % 6);
    std::vector<int> counts = equal_subcarrier_counts(part, n);
    CHECK(std::accumulate(counts.begin(), counts.end(), 0) == n);
    for (int c : counts) CHECK(c >= 1);
  }
}

TEST_CASE("proposed power never exceeds either baseline") {
  VideoConfig video{4, 2, 4, 2, 120.0, 120.0, 10.0};
  OfdmaConfig ofdma{6, 1.0, 0.5};
  ZipfModel zipf{1.0, video.m_h, video.m_v};
  ChannelModel chm{1.0, ofdma.n_subcarriers, 2};
  // high-rate regime: duplicating shared tiles costs exponentially more
  // than the multicast min-gain penalty, so multicast wins per sample
  double D = 2.0;
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    SystemViewState state = draw_view_state(zipf, 2, rng);
    ChannelState ch = draw_channel(chm, rng);
    GroupPartition part = partition(required_tiles(state, video));
    if (part.group_count() > ofdma.n_subcarriers) continue;
    double proposed = solve(part, ch, D, ofdma).primal_power_w;
    double uni = baseline_power(BaselineKind::kUnicast, state, ch, D, video, ofdma);
    double eq = baseline_power(BaselineKind::kEqualSubcarrier, state, ch, D, video, ofdma);
    CHECK(proposed <= uni * (1.0 + 1e-6));
    CHECK(proposed <= eq * (1.0 + 1e-6));
  }
}

TEST_CASE("single user: unicast baseline coincides with the proposed scheme") {
  VideoConfig video{4, 2, 4, 2, 120.0, 120.0, 10.0};
  OfdmaConfig ofdma{4, 1.0, 0.5};
  ChannelModel chm{1.0, ofdma.n_subcarriers, 1};
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    SystemViewState state{{{1 + static_cast<int>(rng() % 4),
                            1 + static_cast<int>(rng() % 2)}}};
    ChannelState ch = draw_channel(chm, rng);
    GroupPartition part = partition(required_tiles(state, video));
    double proposed = solve(part, ch, 0.7, ofdma).primal_power_w;
    double uni = baseline_power(BaselineKind::kUnicast, state, ch, 0.7, video, ofdma);
    CHECK(proposed == doctest::Approx(uni).epsilon(1e-9));
  }
}

TEST_CASE("proposed worst-case rate dominates both baselines") {
  QualityScenario scn;
  scn.video = VideoConfig{4, 2, 2, 2, 120.0, 120.0, 10.0};
  scn.ofdma = OfdmaConfig{6, 1.0, 0.4};
  scn.users = 2;
  scn.budget_w = 8.0;
  scn.min_gain = 0.5;

  double proposed = solve_quality(scn).rate_bps;
  double uni = baseline_quality(BaselineKind::kUnicast, scn);
  double eq = baseline_quality(BaselineKind::kEqualSubcarrier, scn);
  CHECK(proposed >= uni * (1.0 - 1e-6));
  CHECK(proposed >= eq * (1.0 - 1e-6));
  CHECK(uni > 0.0);
  CHECK(eq > 0.0);
}
