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

#ifndef VRMCAST_TYPES_HPP
#define VRMCAST_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vrmcast {

/// Invalid input (bad index, malformed config). CLI maps this to exit 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Valid input with no feasible allocation. CLI maps this to exit 2.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tiling grid, viewing-direction grid and FoV extents of one 360 video.
///
/// The equirectangular frame is cut into v_h x v_v tiles; users pick one of
/// m_h x m_v discrete viewing directions and see a fov_h_deg x fov_v_deg
/// window, padded by margin_deg on each of the four sides.
struct VideoConfig {
  int v_h = 1;  // tile columns
  int v_v = 1;  // tile rows
  int m_h = 1;  // horizontal viewing directions
  int m_v = 1;  // vertical viewing directions
  double fov_h_deg = 100.0;
  double fov_v_deg = 100.0;
  double margin_deg = 0.0;

  int tile_count() const { return v_h * v_v; }
  int direction_count() const { return m_h * m_v; }
  void validate() const;
};

/// One viewing direction on the m_h x m_v grid; 1-based indices.
struct ViewDirection {
  int row = 1;  // 1..m_h
  int col = 1;  // 1..m_v
  friend bool operator==(const ViewDirection&, const ViewDirection&) = default;
};

/// Sorted ascending, unique 1-based tile indices; tile (r,c) on the
/// v_h x v_v grid has index (r-1)*v_h + c.
using TileSet = std::vector<int>;

/// OFDMA downlink: N subcarriers of bandwidth B each, receiver noise
/// power n0 per subcarrier.
struct OfdmaConfig {
  int n_subcarriers = 1;
  double bandwidth_hz = 1.0;
  double noise_w = 1.0;
  void validate() const;
};

/// N x K matrix of channel power gains; strictly positive entries
/// (a zero gain would make delivery to that user impossible).
class ChannelState {
 public:
  ChannelState(int n_subcarriers, int n_users, std::vector<double> gains);

  int subcarriers() const { return n_; }
  int users() const { return k_; }
  double at(int subcarrier, int user) const {
    return gains_[static_cast<size_t>(subcarrier) * k_ + user];
  }
  const std::vector<double>& raw() const { return gains_; }

  double min_gain() const;
  double max_gain() const;

  /// Every entry divided by g; used by the power scaling law check.
  ChannelState scaled(double inv_factor) const;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<double> gains_;  // row-major, subcarrier-major
};

}  // namespace vrmcast

#endif  // VRMCAST_TYPES_HPP
