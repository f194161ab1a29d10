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

#include "vrmcast/grouping.hpp"

#include <algorithm>
#include <map>

namespace vrmcast {

std::vector<TileSet> required_tiles(const SystemViewState& state, const VideoConfig& cfg) {
  if (state.directions.empty()) throw DomainError("SystemViewState: K must be >= 1");
  std::vector<TileSet> out;
  out.reserve(state.directions.size());
  for (const ViewDirection& dir : state.directions) out.push_back(fov_tiles(dir, cfg));
  return out;
}

GroupPartition partition(const std::vector<TileSet>& per_user) {
  if (per_user.empty()) throw DomainError("partition: K must be >= 1");

  // Union of all tiles, ascending.
  TileSet all;
  for (const TileSet& ts : per_user) all.insert(all.end(), ts.begin(), ts.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.empty()) throw InfeasibleError("partition: no tiles to transmit");

  // Bucket tiles by requesting-user signature; walking tiles in ascending
  // order makes first-seen bucket order equal ordering by smallest tile.
  std::map<std::vector<int>, int> bucket_of;  // signature -> group index
  GroupPartition part;
  for (int tile : all) {
    std::vector<int> sig;
    for (size_t k = 0; k < per_user.size(); ++k)
      if (std::binary_search(per_user[k].begin(), per_user[k].end(), tile))
        sig.push_back(static_cast<int>(k));
    auto [it, inserted] = bucket_of.try_emplace(sig, part.group_count());
    if (inserted) part.groups.push_back(Group{{}, sig});
    part.groups[it->second].tiles.push_back(tile);
  }
  for (const Group& g : part.groups) part.total_tiles += g.size();
  return part;
}

}  // namespace vrmcast
