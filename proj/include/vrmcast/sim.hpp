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

#ifndef VRMCAST_SIM_HPP
#define VRMCAST_SIM_HPP

#include <cstdint>
#include <random>
#include <string>

#include "vrmcast/baselines.hpp"
#include "vrmcast/grouping.hpp"
#include "vrmcast/types.hpp"

namespace vrmcast {

/// Viewing-direction popularity: direction (m_h, m_v) has rank
/// (m_h - 1) * M_v + m_v and probability rank^-gamma, normalized.
struct ZipfModel {
  double gamma = 0.0;
  int m_h = 1;
  int m_v = 1;
};

/// Rayleigh-derived channel gains: each gain is the squared modulus of a
/// complex Gaussian with variance 1/d, i.e. exponential with mean 1/d.
struct ChannelModel {
  double pathloss_d = 1.0;
  int n_subcarriers = 1;
  int users = 1;
};

/// Probability per direction in rank order (rank 1 first).
std::vector<double> zipf_pmf(const ZipfModel& model);

SystemViewState draw_view_state(const ZipfModel& model, int users,
                                std::mt19937_64& rng);

ChannelState draw_channel(const ChannelModel& model, std::mt19937_64& rng);

/// Counter-based stream splitting: every (seed, stream, index) triple maps
/// to an independent deterministic generator, so parallel execution order
/// cannot change results.
std::mt19937_64 make_stream_rng(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t index);

enum class ExperimentMode { kPower, kQuality };

struct ExperimentSpec {
  VideoConfig video;
  OfdmaConfig ofdma;
  int users = 1;
  double pathloss_d = 1.0;
  std::vector<double> gammas;
  int n_channel_states = 100;
  int n_view_draws = 50;
  std::uint64_t seed = 0;
  std::vector<std::string> schemes = {"proposed", "unicast", "equal"};
  ExperimentMode mode = ExperimentMode::kPower;
  double encoding_rate_bps = 0.0;  // power mode
  double budget_w = 0.0;           // quality mode
  double min_gain = 0.0;           // quality mode
  long quality_sample = 0;         // 0 = exhaustive state enumeration
  bool parallel = true;
};

struct ExperimentRow {
  double gamma = 0.0;
  std::string scheme;
  std::string metric;  // "mean_power_w" or "rate_bps"
  double value = 0.0;
  double stderr_ = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  long n_failed = 0;  // solver failures in this cell (value excludes them)
};

/// Average total power per (gamma, scheme): n_view_draws view states, each
/// averaged over the shared set of n_channel_states channels. Deterministic
/// for a fixed seed regardless of thread count.
std::vector<ExperimentRow> run_power_experiment(const ExperimentSpec& spec);

/// Worst-case rate per scheme; gamma does not enter the min over states, so
/// each scheme's value is computed once and repeated across the gamma rows.
std::vector<ExperimentRow> run_quality_experiment(const ExperimentSpec& spec);

/// CSV serialization with the fixed header
/// gamma,scheme,metric,value,stderr,n_samples,seed.
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);

}  // namespace vrmcast

#endif  // VRMCAST_SIM_HPP
