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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "vrmcast/grouping.hpp"

using namespace vrmcast;

namespace {

void check_partition_invariants(const GroupPartition& part,
                                const std::vector<TileSet>& per_user) {
  std::set<int> union_tiles;
  for (const TileSet& ts : per_user) union_tiles.insert(ts.begin(), ts.end());

  std::set<int> seen;
  std::set<std::vector<int>> user_sets;
  int total = 0;
  for (const Group& g : part.groups) {
    CHECK(!g.tiles.empty());
    CHECK(!g.users.empty());
    CHECK(std::is_sorted(g.tiles.begin(), g.tiles.end()));
    for (int t : g.tiles) CHECK(seen.insert(t).second);  // disjointness
    CHECK(user_sets.insert(g.users).second);             // distinct signatures
    total += g.size();
  }
  CHECK(seen == union_tiles);
  CHECK(total == part.total_tiles);
  CHECK(part.group_count() <=
        std::min((1 << per_user.size()) - 1, static_cast<int>(union_tiles.size())));
}

}  // namespace

TEST_CASE("signature partition of the three-user example") {
  // A={1,2}, B={2,3}, C={2}: tile 1 -> {A}, tile 2 -> {A,B,C}, tile 3 -> {B}
  std::vector<TileSet> per_user = {{1, 2}, {2, 3}, {2}};
  GroupPartition part = partition(per_user);
  REQUIRE(part.group_count() == 3);
  CHECK(part.total_tiles == 3);
  CHECK(part.groups[0].tiles == TileSet{1});
  CHECK(part.groups[0].users == std::vector<int>{0});
  CHECK(part.groups[1].tiles == TileSet{2});
  CHECK(part.groups[1].users == std::vector<int>{0, 1, 2});
  CHECK(part.groups[2].tiles == TileSet{3});
  CHECK(part.groups[2].users == std::vector<int>{1});
}

TEST_CASE("single user forms a single group") {
  GroupPartition part = partition({{4, 7}});
  REQUIRE(part.group_count() == 1);
  CHECK(part.groups[0].size() == 2);
  CHECK(part.groups[0].users == std::vector<int>{0});
}

TEST_CASE("all-empty input is an error") {
  CHECK_THROWS_AS(partition({{}, {}}), InfeasibleError);
  CHECK_THROWS_AS(partition({}), DomainError);
}

TEST_CASE("required_tiles is per-user fov_tiles") {
  VideoConfig cfg{30, 15, 30, 2, 100.0, 100.0, 15.0};
  SystemViewState state{{{3, 1}, {3, 1}, {17, 2}}};
  std::vector<TileSet> tiles = required_tiles(state, cfg);
  REQUIRE(tiles.size() == 3);
  CHECK(tiles[0] == tiles[1]);  // identical directions, identical sets
  for (int k = 0; k < 3; ++k)
    CHECK(tiles[k] == testing::raster_fov_tiles(state.directions[k], cfg));
}

TEST_CASE("50 random instances match the per-tile signature oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> k_dist(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TileSet> per_user = testing::random_tile_sets(k_dist(rng), 20, rng);
    GroupPartition part = partition(per_user);
    check_partition_invariants(part, per_user);

    auto buckets = testing::signature_buckets(per_user);
    REQUIRE(part.group_count() == static_cast<int>(buckets.size()));
    for (const Group& g : part.groups) {
      std::set<int> sig(g.users.begin(), g.users.end());
      auto it = buckets.find(sig);
      REQUIRE(it != buckets.end());
      CHECK(std::set<int>(g.tiles.begin(), g.tiles.end()) == it->second);
    }
  }
}

TEST_CASE("permuting users permutes signatures but not the size multiset") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<TileSet> per_user = testing::random_tile_sets(3, 15, rng);
    GroupPartition a = partition(per_user);
    std::vector<TileSet> permuted = {per_user[2], per_user[0], per_user[1]};
    GroupPartition b = partition(permuted);
    std::vector<int> sa, sb;
    for (const Group& g : a.groups) sa.push_back(g.size());
    for (const Group& g : b.groups) sb.push_back(g.size());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    CHECK(sa == sb);
    CHECK(a.total_tiles == b.total_tiles);
  }
}

TEST_CASE("adding a user never shrinks the tile total") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<TileSet> per_user = testing::random_tile_sets(3, 15, rng);
    GroupPartition small = partition({per_user[0], per_user[1]});
    GroupPartition big = partition(per_user);
    CHECK(big.total_tiles >= small.total_tiles);
  }
}
