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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "vrmcast/oracle.hpp"

using namespace vrmcast;

namespace {

GroupPartition sized_partition(const std::vector<int>& sizes) {
  GroupPartition part;
  int next = 1;
  for (size_t i = 0; i < sizes.size(); ++i) {
    TileSet ts(sizes[i]);
    std::iota(ts.begin(), ts.end(), next);
    next += sizes[i];
    part.groups.push_back(Group{ts, {static_cast<int>(i)}});
    part.total_tiles += sizes[i];
  }
  return part;
}

double single_sub_power(double rate, double h, double b, double n0) {
  return n0 / h * (std::exp2(rate / b) - 1.0);
}

}  // namespace

TEST_CASE("single group: exhaustive search is plain water-filling") {
  std::mt19937_64 rng(3);
  OfdmaConfig cfg{4, 1.0, 0.5};
  ChannelState ch = testing::random_channel(4, 1, rng);
  GroupPartition part = sized_partition({3});
  double D = 0.9;
  ExhaustivePowerMin ex = exhaustive_powermin(part, ch, D, cfg);
  std::vector<double> gains;
  for (int n = 0; n < 4; ++n) gains.push_back(ch.at(n, 0));
  WaterfillResult wf = group_waterfill({0, 1, 2, 3}, gains, D * 3, cfg);
  double expect = 0.0;
  for (double p : wf.power_w) expect += p;
  CHECK(ex.power_w == doctest::Approx(expect).epsilon(1e-12));
  CHECK(ex.assignment == std::vector<int>(4, 0));
}

TEST_CASE("two subcarriers, two groups: matches the hand enumeration") {
  // only two feasible assignments, each fully closed-form
  OfdmaConfig cfg{2, 1.0, 1.0};
  ChannelState ch(2, 2, {0.8, 1.7, 2.1, 0.4});
  GroupPartition part;
  part.groups = {Group{{1, 2}, {0}}, Group{{3}, {1}}};
  part.total_tiles = 3;
  double D = 0.6;

  GainMatrix gm = effective_gain(part, ch);
  double p_a = single_sub_power(2 * D, gm.at(0, 0), 1.0, 1.0) +
               single_sub_power(D, gm.at(1, 1), 1.0, 1.0);
  double p_b = single_sub_power(D, gm.at(0, 1), 1.0, 1.0) +
               single_sub_power(2 * D, gm.at(1, 0), 1.0, 1.0);
  ExhaustivePowerMin ex = exhaustive_powermin(part, ch, D, cfg);
  CHECK(ex.power_w == doctest::Approx(std::min(p_a, p_b)).epsilon(1e-12));
}

TEST_CASE("zero rate costs zero power") {
  OfdmaConfig cfg{3, 1.0, 1.0};
  ChannelState ch(3, 2, {1.0, 2.0, 0.5, 1.5, 0.7, 0.9});
  GroupPartition part;
  part.groups = {Group{{1}, {0}}, Group{{2}, {1}}};
  part.total_tiles = 2;
  CHECK(exhaustive_powermin(part, ch, 0.0, cfg).power_w == 0.0);
}

TEST_CASE("oracle budget refusal") {
  OracleBudget tight;
  tight.max_subcarriers = 3;
  OfdmaConfig cfg{4, 1.0, 1.0};
  ChannelState ch(4, 1, std::vector<double>(4, 1.0));
  GroupPartition part = sized_partition({2});
  CHECK_THROWS_AS(exhaustive_powermin(part, ch, 1.0, cfg, tight), OracleBudgetError);
  CHECK_THROWS_AS(exhaustive_quality(part, cfg, 1.0, 1.0, tight), OracleBudgetError);
}

TEST_CASE("exhaustive_quality matches a rate grid scan") {
  GroupPartition part = sized_partition({1, 2});
  OfdmaConfig cfg{3, 1.0, 1.0};
  double budget = 5.0, h = 0.9;
  double oracle = exhaustive_quality(part, cfg, budget, h);

  // independent scan: for every count vector, step the rate up until the
  // closed-form power crosses the budget
  auto power_at = [&](const std::vector<int>& counts, double rate) {
    double total = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
      double s = part.groups[i].size();
      total += counts[i] * cfg.noise_w / h *
               (std::exp2(rate * s / (cfg.bandwidth_hz * counts[i])) - 1.0);
    }
    return total;
  };
  double best = 0.0;
  for (int a = 1; a <= 2; ++a) {
    for (int b = 1; a + b <= 3; ++b) {
      double rate = 0.0;
      const double step = 1e-5;
      while (power_at({a, b}, rate + step) <= budget) rate += step;
      best = std::max(best, rate);
    }
  }
  CHECK(oracle == doctest::Approx(best).epsilon(1e-4));
}

TEST_CASE("exhaustive_quality never gives a group zero subcarriers") {
  GroupPartition part = sized_partition({1, 1, 1});
  OfdmaConfig cfg{3, 1.0, 1.0};
  double rate = exhaustive_quality(part, cfg, 3.0, 1.0);
  // the only admissible vector is (1,1,1)
  CHECK(rate == doctest::Approx(rate_for_counts(part, {1, 1, 1}, cfg, 3.0, 1.0))
                    .epsilon(1e-12));
}
