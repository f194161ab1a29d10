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

#ifndef VRMCAST_GROUPING_HPP
#define VRMCAST_GROUPING_HPP

#include "vrmcast/geometry.hpp"
#include "vrmcast/types.hpp"

namespace vrmcast {

/// The K-tuple of all users' current viewing directions.
struct SystemViewState {
  std::vector<ViewDirection> directions;  // one per user
};

/// One multicast group: a tile set needed by exactly this user subset.
struct Group {
  TileSet tiles;
  std::vector<int> users;  // 0-based user indices, sorted ascending
  int size() const { return static_cast<int>(tiles.size()); }
};

/// Disjoint tile sets covering the union of all users' required tiles,
/// keyed by requesting-user subset. Ordered by smallest contained tile.
struct GroupPartition {
  std::vector<Group> groups;
  int total_tiles = 0;  // sum of group sizes
  int group_count() const { return static_cast<int>(groups.size()); }
};

/// Per-user required tile sets: element k is fov_tiles of user k's direction.
std::vector<TileSet> required_tiles(const SystemViewState& state, const VideoConfig& cfg);

/// Groups tiles by the exact subset of users that need them: each distinct
/// non-empty signature forms one group. This is the coarsest partition in
/// which every group is requested by exactly one user subset.
GroupPartition partition(const std::vector<TileSet>& per_user);

}  // namespace vrmcast

#endif  // VRMCAST_GROUPING_HPP
