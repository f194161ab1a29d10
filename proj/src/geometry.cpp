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

#include "vrmcast/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace vrmcast {

namespace {

void check_direction(ViewDirection dir, const VideoConfig& cfg) {
  cfg.validate();
  if (dir.row < 1 || dir.row > cfg.m_h || dir.col < 1 || dir.col > cfg.m_v)
    throw DomainError("ViewDirection out of grid bounds");
}

}  // namespace

std::pair<double, double> direction_center(ViewDirection dir, const VideoConfig& cfg) {
  check_direction(dir, cfg);
  double az = (dir.row - 0.5) * 360.0 / cfg.m_h;
  double el = (dir.col - 0.5) * 180.0 / cfg.m_v;
  return {az, el};
}

TileSet fov_tiles(ViewDirection dir, const VideoConfig& cfg) {
  check_direction(dir, cfg);
  auto [az, el] = direction_center(dir, cfg);
  const double half_w = 0.5 * (cfg.fov_h_deg + 2.0 * cfg.margin_deg);
  const double half_h = 0.5 * (cfg.fov_v_deg + 2.0 * cfg.margin_deg);

  const double tile_w = 360.0 / cfg.v_h;
  const double tile_h = 180.0 / cfg.v_v;

  // Vertical: clamp at the poles, no wrap. Tile row r covers
  // [(r-1)*tile_h, r*tile_h); positive-area overlap with the closed band.
  const double e0 = std::max(0.0, el - half_h);
  const double e1 = std::min(180.0, el + half_h);
  std::vector<int> rows;
  for (int r = 1; r <= cfg.v_v; ++r) {
    double t0 = (r - 1) * tile_h;
    double t1 = r * tile_h;
    if (e1 > t0 && e0 < t1) rows.push_back(r);
  }

  // Horizontal: wraps mod 360. A column is covered if its interval,
  // shifted by -360/0/+360, intersects [a0, a1] with positive length.
  std::vector<int> cols;
  if (2.0 * half_w >= 360.0) {
    for (int c = 1; c <= cfg.v_h; ++c) cols.push_back(c);
  } else {
    double a0 = az - half_w;
    double a1 = az + half_w;
    // normalize so a0 lies in [0, 360)
    double shift = std::floor(a0 / 360.0) * 360.0;
    a0 -= shift;
    a1 -= shift;
    for (int c = 1; c <= cfg.v_h; ++c) {
      double t0 = (c - 1) * tile_w;
      double t1 = c * tile_w;
      bool hit = false;
      for (double s : {-360.0, 0.0, 360.0}) {
        if (a1 > t0 + s && a0 < t1 + s) {
          hit = true;
          break;
        }
      }
      if (hit) cols.push_back(c);
    }
  }

  TileSet tiles;
  tiles.reserve(rows.size() * cols.size());
  for (int r : rows)
    for (int c : cols) tiles.push_back((r - 1) * cfg.v_h + c);
  std::sort(tiles.begin(), tiles.end());
  return tiles;
}

}  // namespace vrmcast
