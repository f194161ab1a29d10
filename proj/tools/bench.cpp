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

// Compares the OpenMP state-enumeration kernels against the serial
// reference paths and checks that both produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "vrmcast/qualitymax.hpp"
#include "vrmcast/sim.hpp"

using namespace vrmcast;

namespace {

template <typename F>
double time_s(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  QualityScenario scn;
  scn.video = {30, 15, 30, 2, 100.0, 100.0, 15.0};
  scn.ofdma = {128, 39e3, 1e-9};
  scn.users = 3;
  scn.budget_w = 1e4;
  scn.min_gain = 1e-5;

  EnumOptions serial;
  serial.keep_per_state = false;
  serial.parallel = false;
  EnumOptions parallel = serial;
  parallel.parallel = true;

  QualityResult rs, rp;
  double ts = time_s([&] { rs = solve_quality(scn, serial); });
  double tp = time_s([&] { rp = solve_quality(scn, parallel); });
  std::printf("solve_quality (%ld states): serial %.3fs, parallel %.3fs, "
              "speedup %.2fx, results %s\n",
              rs.n_states, ts, tp, ts / tp,
              rs.rate_bps == rp.rate_bps ? "identical" : "DIFFER");

  ExperimentSpec spec;
  spec.video = {10, 5, 10, 2, 100.0, 100.0, 15.0};
  spec.ofdma = {16, 39e3, 1e-9};
  spec.users = 3;
  spec.pathloss_d = 1e3;
  spec.gammas = {1.0};
  spec.n_channel_states = 5;
  spec.n_view_draws = 8;
  spec.encoding_rate_bps = 30e3;
  spec.seed = 7;

  std::vector<ExperimentRow> rows_s, rows_p;
  spec.parallel = false;
  double es = time_s([&] { rows_s = run_power_experiment(spec); });
  spec.parallel = true;
  double ep = time_s([&] { rows_p = run_power_experiment(spec); });
  bool same = rows_to_csv(rows_s) == rows_to_csv(rows_p);
  std::printf("power experiment (%zu rows): serial %.3fs, parallel %.3fs, "
              "speedup %.2fx, results %s\n",
              rows_s.size(), es, ep, es / ep, same ? "identical" : "DIFFER");

  return (rs.rate_bps == rp.rate_bps && same) ? 0 : 1;
}
