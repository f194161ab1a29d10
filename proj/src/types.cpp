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

#include "vrmcast/types.hpp"

#include <algorithm>
#include <cmath>

namespace vrmcast {

void VideoConfig::validate() const {
  if (v_h < 1 || v_v < 1) throw DomainError("VideoConfig: v_h and v_v must be >= 1");
  if (m_h < 1 || m_v < 1) throw DomainError("VideoConfig: m_h and m_v must be >= 1");
  if (!(fov_h_deg > 0.0) || !(fov_v_deg > 0.0))
    throw DomainError("VideoConfig: fov extents must be > 0");
  if (!(margin_deg >= 0.0)) throw DomainError("VideoConfig: margin_deg must be >= 0");
  if (!std::isfinite(fov_h_deg + 2.0 * margin_deg) ||
      !std::isfinite(fov_v_deg + 2.0 * margin_deg))
    throw DomainError("VideoConfig: effective FoV must be finite");
}

void OfdmaConfig::validate() const {
  if (n_subcarriers < 1) throw DomainError("OfdmaConfig: n_subcarriers must be >= 1");
  if (!(bandwidth_hz > 0.0)) throw DomainError("OfdmaConfig: bandwidth_hz must be > 0");
  if (!(noise_w > 0.0)) throw DomainError("OfdmaConfig: noise_w must be > 0");
}

ChannelState::ChannelState(int n_subcarriers, int n_users, std::vector<double> gains)
    : n_(n_subcarriers), k_(n_users), gains_(std::move(gains)) {
  if (n_ < 1 || k_ < 1) throw DomainError("ChannelState: dimensions must be >= 1");
  if (gains_.size() != static_cast<size_t>(n_) * k_)
    throw DomainError("ChannelState: gain vector size mismatch");
  for (double h : gains_)
    if (!(h > 0.0) || !std::isfinite(h))
      throw DomainError("ChannelState: all gains must be finite and > 0");
}

double ChannelState::min_gain() const {
  return *std::min_element(gains_.begin(), gains_.end());
}

double ChannelState::max_gain() const {
  return *std::max_element(gains_.begin(), gains_.end());
}

ChannelState ChannelState::scaled(double inv_factor) const {
  if (!(inv_factor > 0.0)) throw DomainError("ChannelState: scale factor must be > 0");
  std::vector<double> g(gains_);
  for (double& h : g) h /= inv_factor;
  return ChannelState(n_, k_, std::move(g));
}

}  // namespace vrmcast
