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

#include "vrmcast/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vrmcast {

namespace {

double assignment_power(const GroupPartition& part, const GainMatrix& gm,
                        const OfdmaConfig& cfg, double D,
                        const std::vector<int>& assignment) {
  double total = 0.0;
  for (int i = 0; i < gm.i; ++i) {
    std::vector<int> subs;
    std::vector<double> gains;
    for (int n = 0; n < gm.n; ++n)
      if (assignment[n] == i) {
        subs.push_back(n);
        gains.push_back(gm.at(n, i));
      }
    WaterfillResult wf =
        group_waterfill(subs, gains, D * part.groups[i].size(), cfg);
    for (double p : wf.power_w) total += p;
  }
  return total;
}

}  // namespace

ExhaustivePowerMin exhaustive_powermin(const GroupPartition& part,
                                       const ChannelState& ch,
                                       double encoding_rate_bps,
                                       const OfdmaConfig& cfg,
                                       const OracleBudget& budget) {
  const int N = cfg.n_subcarriers;
  const int I = part.group_count();
  if (I > N) throw InfeasibleError("exhaustive_powermin: more groups than subcarriers");
  double n_assignments = std::pow(static_cast<double>(I), N);
  if (N > budget.max_subcarriers || I > budget.max_groups ||
      n_assignments > static_cast<double>(budget.max_assignments))
    throw OracleBudgetError("exhaustive_powermin: instance exceeds oracle budget (" +
                            std::to_string(static_cast<long>(n_assignments)) +
                            " assignments)");

  GainMatrix gm = effective_gain(part, ch);
  ExhaustivePowerMin best;
  best.power_w = std::numeric_limits<double>::infinity();

  std::vector<int> assignment(N, 0);
  std::vector<int> count(I, 0);
  count[0] = N;
  const double D = encoding_rate_bps;

  while (true) {
    bool feasible = true;
    if (D > 0.0)
      for (int i = 0; i < I; ++i)
        if (count[i] == 0 && part.groups[i].size() > 0) {
          feasible = false;
          break;
        }
    if (feasible) {
      double p = assignment_power(part, gm, cfg, D, assignment);
      if (p < best.power_w) {
        best.power_w = p;
        best.assignment = assignment;
      }
    }
    // odometer step
    int pos = N - 1;
    while (pos >= 0 && assignment[pos] == I - 1) {
      --count[I - 1];
      assignment[pos] = 0;
      ++count[0];
      --pos;
    }
    if (pos < 0) break;
    --count[assignment[pos]];
    ++assignment[pos];
    ++count[assignment[pos]];
  }
  if (!std::isfinite(best.power_w))
    throw InfeasibleError("exhaustive_powermin: no feasible assignment");
  return best;
}

double exhaustive_quality(const GroupPartition& part, const OfdmaConfig& ofdma,
                          double budget_w, double min_gain,
                          const OracleBudget& budget) {
  const int N = ofdma.n_subcarriers;
  const int I = part.group_count();
  if (I > N) throw InfeasibleError("exhaustive_quality: more groups than subcarriers");

  // compositions with N_i >= 1 and sum <= N: at most C(N, I) * N, bounded
  // crudely by N^I for the budget check
  double n_vectors = std::pow(static_cast<double>(N), I);
  if (N > budget.max_subcarriers || I > budget.max_groups ||
      n_vectors > static_cast<double>(budget.max_assignments))
    throw OracleBudgetError("exhaustive_quality: instance exceeds oracle budget");

  std::vector<int> counts(I, 1);
  double best = 0.0;
  while (true) {
    int sum = 0;
    for (int c : counts) sum += c;
    if (sum <= N)
      best = std::max(best, rate_for_counts(part, counts, ofdma, budget_w, min_gain));
    int pos = I - 1;
    while (pos >= 0 && counts[pos] == N) {
      counts[pos] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++counts[pos];
  }
  return best;
}

}  // namespace vrmcast
