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

#ifndef VRMCAST_GEOMETRY_HPP
#define VRMCAST_GEOMETRY_HPP

#include <utility>

#include "vrmcast/types.hpp"

namespace vrmcast {

/// Angular center of a viewing direction on the uniform m_h x m_v grid:
/// azimuth (row - 1/2) * 360 / m_h, elevation (col - 1/2) * 180 / m_v.
std::pair<double, double> direction_center(ViewDirection dir, const VideoConfig& cfg);

/// Tiles whose interior overlaps (with positive area) the padded FoV
/// rectangle centered at `dir`. Horizontal axis wraps at 360 degrees;
/// vertical axis is clamped to [0, 180]. Tiles are half-open angular
/// intervals, so a FoV edge exactly on a tile boundary does not pull in
/// the neighboring tile.
TileSet fov_tiles(ViewDirection dir, const VideoConfig& cfg);

}  // namespace vrmcast

#endif  // VRMCAST_GEOMETRY_HPP
