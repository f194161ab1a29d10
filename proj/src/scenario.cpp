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

#include "vrmcast/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace vrmcast {

namespace {

using nlohmann::json;

const json& require(const json& j, const std::string& field, const std::string& ctx) {
  auto it = j.find(field);
  if (it == j.end())
    throw DomainError("scenario: missing field '" + ctx + field + "'");
  return *it;
}

double require_number(const json& j, const std::string& field, const std::string& ctx) {
  const json& v = require(j, field, ctx);
  if (!v.is_number())
    throw DomainError("scenario: field '" + ctx + field + "' must be a number");
  return v.get<double>();
}

int require_int(const json& j, const std::string& field, const std::string& ctx) {
  const json& v = require(j, field, ctx);
  if (!v.is_number_integer())
    throw DomainError("scenario: field '" + ctx + field + "' must be an integer");
  return v.get<int>();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("scenario: invalid JSON: ") + e.what());
  }

  Scenario s;
  const json& video = require(j, "video", "");
  s.video.v_h = require_int(video, "v_h", "video.");
  s.video.v_v = require_int(video, "v_v", "video.");
  s.video.m_h = require_int(video, "m_h", "video.");
  s.video.m_v = require_int(video, "m_v", "video.");
  s.video.fov_h_deg = require_number(video, "fov_h_deg", "video.");
  s.video.fov_v_deg = require_number(video, "fov_v_deg", "video.");
  s.video.margin_deg = video.value("margin_deg", 0.0);
  s.video.validate();

  const json& ofdma = require(j, "ofdma", "");
  s.ofdma.n_subcarriers = require_int(ofdma, "n_subcarriers", "ofdma.");
  s.ofdma.bandwidth_hz = require_number(ofdma, "bandwidth_hz", "ofdma.");
  s.ofdma.noise_w = require_number(ofdma, "noise_w", "ofdma.");
  s.ofdma.validate();

  s.users = require_int(j, "users", "");
  if (s.users < 1) throw DomainError("scenario: field 'users' must be >= 1");
  s.zipf_gamma = j.value("zipf_gamma", 0.0);
  if (s.zipf_gamma < 0.0) throw DomainError("scenario: field 'zipf_gamma' must be >= 0");
  s.pathloss_d = j.value("pathloss_d", 1.0);
  if (!(s.pathloss_d > 0.0)) throw DomainError("scenario: field 'pathloss_d' must be > 0");

  if (j.contains("encoding_rate_bps")) {
    s.encoding_rate_bps = require_number(j, "encoding_rate_bps", "");
    if (*s.encoding_rate_bps < 0.0)
      throw DomainError("scenario: field 'encoding_rate_bps' must be >= 0");
  }
  if (j.contains("budget_w")) {
    s.budget_w = require_number(j, "budget_w", "");
    if (*s.budget_w < 0.0) throw DomainError("scenario: field 'budget_w' must be >= 0");
  }
  if (j.contains("min_gain")) {
    s.min_gain = require_number(j, "min_gain", "");
    if (!(*s.min_gain > 0.0)) throw DomainError("scenario: field 'min_gain' must be > 0");
  }
  if (j.contains("gammas")) {
    const json& g = j["gammas"];
    if (!g.is_array()) throw DomainError("scenario: field 'gammas' must be an array");
    s.gammas = g.get<std::vector<double>>();
  }
  s.n_channel_states = j.value("n_channel_states", 100);
  if (s.n_channel_states < 1)
    throw DomainError("scenario: field 'n_channel_states' must be >= 1");
  s.n_view_draws = j.value("n_view_draws", 50);
  if (s.n_view_draws < 1) throw DomainError("scenario: field 'n_view_draws' must be >= 1");
  s.seed = j.value("seed", 0ULL);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("scenario: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["video"] = {{"v_h", s.video.v_h},     {"v_v", s.video.v_v},
                {"m_h", s.video.m_h},     {"m_v", s.video.m_v},
                {"fov_h_deg", s.video.fov_h_deg},
                {"fov_v_deg", s.video.fov_v_deg},
                {"margin_deg", s.video.margin_deg}};
  j["ofdma"] = {{"n_subcarriers", s.ofdma.n_subcarriers},
                {"bandwidth_hz", s.ofdma.bandwidth_hz},
                {"noise_w", s.ofdma.noise_w}};
  j["users"] = s.users;
  j["zipf_gamma"] = s.zipf_gamma;
  j["pathloss_d"] = s.pathloss_d;
  if (s.encoding_rate_bps) j["encoding_rate_bps"] = *s.encoding_rate_bps;
  if (s.budget_w) j["budget_w"] = *s.budget_w;
  if (s.min_gain) j["min_gain"] = *s.min_gain;
  if (s.gammas) j["gammas"] = *s.gammas;
  j["n_channel_states"] = s.n_channel_states;
  j["n_view_draws"] = s.n_view_draws;
  j["seed"] = s.seed;
  return j;
}

json partition_to_json(const GroupPartition& part) {
  json groups = json::array();
  for (const Group& g : part.groups) {
    json users = json::array();
    for (int k : g.users) users.push_back(k + 1);  // 1-based in output
    groups.push_back({{"tiles", g.tiles}, {"size", g.size()}, {"users", users}});
  }
  return {{"groups", groups}, {"total_tiles", part.total_tiles}};
}

json powermin_result_to_json(const PowerMinResult& res) {
  json j;
  j["primal_power_w"] = res.primal_power_w;
  j["dual_power_w"] = res.dual_power_w;
  j["multipliers"] = res.multipliers;
  j["lower_bound_w"] = res.lower_bound_w;
  j["upper_bound_w"] = res.upper_bound_w;
  j["iterations"] = res.iterations;
  j["converged"] = res.converged;
  j["unique_argmax"] = res.unique_argmax;
  j["allocation"] = {{"assignment", res.allocation.assignment},
                     {"power_w", res.allocation.power_w},
                     {"rate_bps", res.allocation.rate_bps},
                     {"total_power_w", res.allocation.total_power_w}};
  return j;
}

json quality_result_to_json(const QualityResult& res, bool summary_only) {
  json j;
  j["rate_bps"] = res.rate_bps;
  j["relaxed_rate_bps"] = res.relaxed_rate_bps;
  j["lower_bound_bps"] = res.lower_bound_bps;
  j["upper_bound_bps"] = res.upper_bound_bps;
  j["sampled"] = res.sampled;
  j["n_states"] = res.n_states;
  j["worst_sum_s"] = res.worst_sum_s;
  j["worst_i"] = res.worst_i;
  json worst = json::array();
  for (const ViewDirection& d : res.worst_state)
    worst.push_back({{"row", d.row}, {"col", d.col}});
  j["worst_state"] = worst;
  if (!summary_only) {
    json table = json::array();
    for (const StateQuality& sq : res.per_state) {
      json st = json::array();
      for (const ViewDirection& d : sq.state)
        st.push_back({{"row", d.row}, {"col", d.col}});
      table.push_back({{"state", st}, {"counts", sq.counts}, {"rate_bps", sq.rate_bps}});
    }
    j["per_state"] = table;
  }
  return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write '" + tmp + "'");
    out << content;
    if (!out) throw DomainError("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw DomainError("cannot rename '" + tmp + "' to '" + path + "'");
}

}  // namespace vrmcast
