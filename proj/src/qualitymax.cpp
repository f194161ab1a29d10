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

#include "vrmcast/qualitymax.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace vrmcast {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double pow2m1(double x) { return std::expm1(x * kLn2); }

// Largest D with power_for(counts, D) <= budget, bisected on [0, hi]
// where hi is known to be at or beyond the budget.
double bisect_rate(const GroupPartition& part, const std::vector<int>& counts,
                   const OfdmaConfig& ofdma, double budget_w, double min_gain,
                   double hi) {
  if (hi <= 0.0 || power_for(part, counts, hi, ofdma, min_gain) <=
                       budget_w * (1.0 + 1e-12))
    return std::max(0.0, hi);
  double lo = 0.0;
  for (int it = 0; it < 300; ++it) {
    double mid = 0.5 * (lo + hi);
    double p = power_for(part, counts, mid, ofdma, min_gain);
    if (std::abs(p - budget_w) <= 1e-9 * budget_w) {
      if (p <= budget_w) lo = mid;
      break;
    }
    (p < budget_w ? lo : hi) = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }
  return lo;  // the feasible side of the bracket
}

double greedy_metric(GreedyMetric metric, double s, double b, int n_i,
                     double rate_estimate) {
  switch (metric) {
    case GreedyMetric::kAsPrinted:
      return s * kLn2 / b * std::exp2(s / (b * n_i));
    case GreedyMetric::kRateAware:
      return s * rate_estimate * kLn2 / b * std::exp2(rate_estimate * s / (b * n_i));
  }
  return 0.0;
}

}  // namespace

void QualityScenario::validate() const {
  video.validate();
  ofdma.validate();
  if (users < 1) throw DomainError("QualityScenario: users must be >= 1");
  if (!(budget_w > 0.0)) throw InfeasibleError("QualityScenario: budget_w must be > 0");
  if (!(min_gain > 0.0)) throw DomainError("QualityScenario: min_gain must be > 0");
}

double power_for(const GroupPartition& part, const std::vector<int>& counts,
                 double encoding_rate_bps, const OfdmaConfig& ofdma,
                 double min_gain) {
  if (counts.size() != part.groups.size())
    throw DomainError("power_for: counts size mismatch");
  double total = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 1) throw DomainError("power_for: every group needs >= 1 subcarrier");
    double s = part.groups[i].size();
    total += counts[i] * ofdma.noise_w / min_gain *
             pow2m1(encoding_rate_bps * s / (ofdma.bandwidth_hz * counts[i]));
  }
  return total;
}

RelaxedQuality relaxed_quality(const GroupPartition& part, const OfdmaConfig& ofdma,
                               double budget_w, double min_gain) {
  const double sum_s = part.total_tiles;
  const double n = ofdma.n_subcarriers;
  RelaxedQuality res;
  res.counts.reserve(part.groups.size());
  for (const Group& g : part.groups) res.counts.push_back(g.size() * n / sum_s);
  res.rate_bps = ofdma.bandwidth_hz * n *
                 std::log1p(budget_w * min_gain / (n * ofdma.noise_w)) /
                 (kLn2 * sum_s);
  return res;
}

GreedyQuality greedy_quality(const GroupPartition& part, const OfdmaConfig& ofdma,
                             double budget_w, double min_gain,
                             GreedyMetric metric) {
  const int I = part.group_count();
  const int N = ofdma.n_subcarriers;
  if (I > N) throw InfeasibleError("greedy_quality: more groups than subcarriers");

  RelaxedQuality relaxed = relaxed_quality(part, ofdma, budget_w, min_gain);
  const double b = ofdma.bandwidth_hz;

  GreedyQuality res;
  res.counts.resize(I);
  long sum = 0;
  for (int i = 0; i < I; ++i) {
    res.counts[i] = std::max(1, static_cast<int>(std::floor(relaxed.counts[i])));
    sum += res.counts[i];
  }
  // Clamping tiny shares to 1 can overshoot N; give back from the groups
  // that lose the least.
  while (sum > N) {
    int victim = -1;
    double worst = 0.0;
    for (int i = 0; i < I; ++i) {
      if (res.counts[i] < 2) continue;
      double m = greedy_metric(metric, part.groups[i].size(), b, res.counts[i],
                               relaxed.rate_bps);
      if (victim < 0 || m < worst) {
        worst = m;
        victim = i;
      }
    }
    if (victim < 0) throw InfeasibleError("greedy_quality: cannot fit groups into N");
    --res.counts[victim];
    --sum;
  }
  while (sum < N) {
    int pick = 0;
    double best = greedy_metric(metric, part.groups[0].size(), b, res.counts[0],
                                relaxed.rate_bps);
    for (int i = 1; i < I; ++i) {
      double m = greedy_metric(metric, part.groups[i].size(), b, res.counts[i],
                               relaxed.rate_bps);
      if (m > best) {
        best = m;
        pick = i;
      }
    }
    ++res.counts[pick];
    ++sum;
  }

  // Bisect the rate against the budget; the relaxed rate brackets from above.
  res.rate_bps = bisect_rate(part, res.counts, ofdma, budget_w, min_gain,
                             relaxed.rate_bps);
  return res;
}

double rate_for_counts(const GroupPartition& part, const std::vector<int>& counts,
                       const OfdmaConfig& ofdma, double budget_w, double min_gain) {
  double hi = 1.0;
  while (power_for(part, counts, hi, ofdma, min_gain) < budget_w && hi < 1e280)
    hi *= 2.0;
  return bisect_rate(part, counts, ofdma, budget_w, min_gain, hi);
}

namespace {

std::vector<ViewDirection> state_from_indices(const std::vector<int>& idx,
                                              const VideoConfig& cfg) {
  std::vector<ViewDirection> s;
  s.reserve(idx.size());
  for (int d : idx) s.push_back(ViewDirection{d / cfg.m_v + 1, d % cfg.m_v + 1});
  return s;
}

// C(m + k - 1, k) with saturation, as a double (only compared to a cap).
double multiset_count(int m, int k) {
  double c = 1.0;
  for (int j = 1; j <= k; ++j) c = c * (m - 1 + j) / j;
  return c;
}

void enumerate_multisets(int m, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(k, 0);
  while (true) {
    out.push_back(cur);
    int pos = k - 1;
    while (pos >= 0 && cur[pos] == m - 1) --pos;
    if (pos < 0) break;
    int v = cur[pos] + 1;
    for (int j = pos; j < k; ++j) cur[j] = v;
  }
}

}  // namespace

StateEnumeration enumerate_view_states(const VideoConfig& cfg, int users,
                                       const EnumOptions& opts) {
  cfg.validate();
  if (users < 1) throw DomainError("enumerate_view_states: users must be >= 1");
  const int m = cfg.direction_count();

  StateEnumeration e;
  double count = multiset_count(m, users);
  if (opts.sample > 0 && count > static_cast<double>(opts.max_states)) {
    e.sampled = true;
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> pick(0, m - 1);
    e.states.reserve(opts.sample);
    for (long s = 0; s < opts.sample; ++s) {
      std::vector<int> st(users);
      for (int& d : st) d = pick(rng);
      std::sort(st.begin(), st.end());
      e.states.push_back(std::move(st));
    }
  } else if (count > static_cast<double>(opts.max_states)) {
    throw DomainError("enumerate_view_states: state space exceeds the "
                      "enumeration cap; enable sampling");
  } else {
    e.states.reserve(static_cast<size_t>(count));
    enumerate_multisets(m, users, e.states);
  }

  // Direction -> tile set cache, warmed sequentially; read-only afterwards.
  e.tiles_of.resize(m);
  for (int d = 0; d < m; ++d)
    e.tiles_of[d] = fov_tiles(ViewDirection{d / cfg.m_v + 1, d % cfg.m_v + 1}, cfg);
  return e;
}

QualityResult solve_quality(const QualityScenario& scn, const EnumOptions& opts) {
  scn.validate();
  const VideoConfig& cfg = scn.video;
  const int k = scn.users;

  QualityResult res;
  StateEnumeration e = enumerate_view_states(cfg, k, opts);
  std::vector<std::vector<int>>& states = e.states;
  std::vector<TileSet>& tiles_of = e.tiles_of;
  res.sampled = e.sampled;
  res.n_states = static_cast<long>(states.size());

  const long n = res.n_states;
  std::vector<double> rates(n);
  std::vector<std::vector<int>> counts(n);
  std::vector<int> sum_s(n), n_groups(n);

  auto eval_state = [&](long s) {
    std::vector<TileSet> per_user;
    per_user.reserve(k);
    for (int d : states[s]) per_user.push_back(tiles_of[d]);
    GroupPartition part = partition(per_user);
    GreedyQuality g = greedy_quality(part, scn.ofdma, scn.budget_w, scn.min_gain,
                                     opts.metric);
    rates[s] = g.rate_bps;
    counts[s] = std::move(g.counts);
    sum_s[s] = part.total_tiles;
    n_groups[s] = part.group_count();
  };

  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (long s = 0; s < n; ++s) eval_state(s);
  } else {
    for (long s = 0; s < n; ++s) eval_state(s);
  }

  // Deterministic min-reduction in enumeration order.
  long argmin = 0;
  for (long s = 0; s < n; ++s) {
    if (rates[s] < rates[argmin]) argmin = s;
    res.worst_sum_s = std::max(res.worst_sum_s, sum_s[s]);
    res.worst_i = std::max(res.worst_i, n_groups[s]);
  }
  res.rate_bps = rates[argmin];
  res.worst_state = state_from_indices(states[argmin], cfg);

  {
    std::vector<TileSet> per_user;
    for (int d : states[argmin]) per_user.push_back(tiles_of[d]);
    GroupPartition part = partition(per_user);
    res.relaxed_rate_bps =
        relaxed_quality(part, scn.ofdma, scn.budget_w, scn.min_gain).rate_bps;
  }

  auto [lo, up] = quality_bounds(scn, res.worst_sum_s, res.worst_i);
  res.lower_bound_bps = lo;
  res.upper_bound_bps = up;

  if (opts.keep_per_state) {
    res.per_state.reserve(n);
    for (long s = 0; s < n; ++s)
      res.per_state.push_back(StateQuality{state_from_indices(states[s], cfg),
                                           counts[s], rates[s]});
  }
  return res;
}

std::pair<double, double> quality_bounds(const QualityScenario& scn,
                                         int worst_sum_s, int worst_i) {
  if (worst_sum_s < 1) throw DomainError("quality_bounds: worst_sum_s must be >= 1");
  const double b = scn.ofdma.bandwidth_hz;
  const double n = scn.ofdma.n_subcarriers;
  const double n0 = scn.ofdma.noise_w;
  double lower = b * std::log1p(scn.budget_w * scn.min_gain / (worst_i * n0)) /
                 (kLn2 * worst_sum_s);
  double upper = b * n * std::log1p(scn.budget_w * scn.min_gain / (n * n0)) /
                 (kLn2 * worst_sum_s);
  return {lower, upper};
}

}  // namespace vrmcast
