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

#ifndef VRMCAST_SCENARIO_HPP
#define VRMCAST_SCENARIO_HPP

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "vrmcast/powermin.hpp"
#include "vrmcast/qualitymax.hpp"
#include "vrmcast/sim.hpp"
#include "vrmcast/types.hpp"

namespace vrmcast {

/// Parsed scenario file (single JSON document, SI units carried in the
/// field names). Exactly one of encoding_rate_bps / budget_w is used,
/// depending on the subcommand.
struct Scenario {
  VideoConfig video;
  OfdmaConfig ofdma;
  int users = 1;
  double zipf_gamma = 0.0;
  double pathloss_d = 1.0;
  std::optional<double> encoding_rate_bps;
  std::optional<double> budget_w;
  std::optional<double> min_gain;
  std::optional<std::vector<double>> gammas;
  int n_channel_states = 100;
  int n_view_draws = 50;
  std::uint64_t seed = 0;
};

/// Parses and validates; throws DomainError naming the offending field.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

nlohmann::json scenario_to_json(const Scenario& s);
nlohmann::json partition_to_json(const GroupPartition& part);
nlohmann::json powermin_result_to_json(const PowerMinResult& res);
nlohmann::json quality_result_to_json(const QualityResult& res, bool summary_only);

/// Writes via a temp file + rename so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace vrmcast

#endif  // VRMCAST_SCENARIO_HPP
