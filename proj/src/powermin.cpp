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

#include "vrmcast/powermin.hpp"

#include <algorithm>

#include "vrmcast/baselines.hpp"
#include <cmath>
#include <limits>
#include <numbers>

namespace vrmcast {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double pow2m1(double x) { return std::expm1(x * kLn2); }  // 2^x - 1

}  // namespace

GainMatrix effective_gain(const GroupPartition& part, const ChannelState& ch) {
  GainMatrix m;
  m.n = ch.subcarriers();
  m.i = part.group_count();
  m.data.assign(static_cast<size_t>(m.n) * m.i, 0.0);
  for (int i = 0; i < m.i; ++i) {
    for (int k : part.groups[i].users)
      if (k < 0 || k >= ch.users()) throw DomainError("effective_gain: user index out of range");
    for (int n = 0; n < m.n; ++n) {
      double h = std::numeric_limits<double>::infinity();
      for (int k : part.groups[i].users) h = std::min(h, ch.at(n, k));
      m.data[static_cast<size_t>(n) * m.i + i] = h;
    }
  }
  return m;
}

WaterfillResult group_waterfill(const std::vector<int>& subcarriers,
                                const std::vector<double>& gains,
                                double target_rate_bps, const OfdmaConfig& cfg) {
  cfg.validate();
  if (subcarriers.size() != gains.size())
    throw DomainError("group_waterfill: subcarrier/gain size mismatch");
  if (target_rate_bps < 0.0) throw DomainError("group_waterfill: negative target rate");
  const size_t m = subcarriers.size();

  WaterfillResult res;
  res.power_w.assign(m, 0.0);
  res.rate_bps.assign(m, 0.0);
  if (target_rate_bps == 0.0) return res;
  if (m == 0) throw InfeasibleError("group_waterfill: empty subcarrier set with positive rate");

  const double B = cfg.bandwidth_hz;
  const double n0 = cfg.noise_w;

  // Per-subcarrier activation threshold c_j and log-gain constant:
  // for lambda > c_j the power B*lambda/ln2 - n0/h_j is positive and the
  // capacity is B*(log2(lambda) - log2(c_j)).
  std::vector<double> c(m), logc(m);
  for (size_t j = 0; j < m; ++j) {
    c[j] = n0 * kLn2 / (B * gains[j]);
    logc[j] = std::log2(c[j]);
  }

  auto rate_at = [&](double lambda) {
    if (lambda <= 0.0) return 0.0;
    double l2 = std::log2(lambda);
    double r = 0.0;
    for (size_t j = 0; j < m; ++j)
      if (lambda > c[j]) r += B * (l2 - logc[j]);
    return r;
  };

  double lo = 0.0;
  double hi = 1.0;
  while (rate_at(hi) < target_rate_bps && hi < 1e280) hi *= 2.0;
  for (int it = 0; it < 300; ++it) {
    double mid = 0.5 * (lo + hi);
    double r = rate_at(mid);
    if (std::abs(r - target_rate_bps) <= 1e-12 * target_rate_bps) {
      lo = hi = mid;
      break;
    }
    (r < target_rate_bps ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  double lambda = 0.5 * (lo + hi);

  res.lambda = lambda;
  for (size_t j = 0; j < m; ++j) {
    if (lambda > c[j]) {
      res.power_w[j] = B * lambda / kLn2 - n0 / gains[j];
      res.rate_bps[j] = B * (std::log2(lambda) - logc[j]);
    }
  }
  return res;
}

namespace {

// Shared per-instance constants for the dual iteration. For group i on
// subcarrier n, c = S_i*n0*ln2/(B*Hmin) is the multiplier threshold above
// which the water-filling power is positive, and the resulting capacity is
// B*(log2(lambda_i) - log2(c)).
struct DualWorkspace {
  int n = 0;
  int i = 0;
  std::vector<double> c;     // n x i thresholds
  std::vector<double> logc;  // precomputed log2(c)
  std::vector<double> inv_bs;  // B / S_i
};

DualWorkspace make_workspace(const GroupPartition& part, const GainMatrix& gm,
                             const OfdmaConfig& cfg) {
  DualWorkspace w;
  w.n = gm.n;
  w.i = gm.i;
  w.c.resize(static_cast<size_t>(w.n) * w.i);
  w.logc.resize(w.c.size());
  w.inv_bs.resize(w.i);
  for (int i = 0; i < w.i; ++i)
    w.inv_bs[i] = cfg.bandwidth_hz / part.groups[i].size();
  for (int n = 0; n < w.n; ++n) {
    for (int i = 0; i < w.i; ++i) {
      size_t idx = static_cast<size_t>(n) * w.i + i;
      double h = gm.at(n, i);
      w.c[idx] = cfg.noise_w * kLn2 / (w.inv_bs[i] * h);
      w.logc[idx] = std::log2(w.c[idx]);
    }
  }
  return w;
}

// Assignment metric W_{n,i} at multiplier lambda_i; zero when the
// water-filling power would be zero.
inline double metric_w(const DualWorkspace& w, size_t idx, int i, double lambda,
                       double log2_lambda) {
  if (lambda <= w.c[idx]) return 0.0;
  double cap_log = log2_lambda - w.logc[idx];  // log2(1 + H f / n0)
  double frac = (1.0 - w.c[idx] / lambda) / kLn2;
  return lambda * w.inv_bs[i] * (cap_log - frac);
}

double repair_total_power(const GroupPartition& part, const GainMatrix& gm,
                          const OfdmaConfig& cfg, double D,
                          const std::vector<int>& assignment,
                          Allocation* out) {
  const int N = gm.n;
  const int I = gm.i;
  double total = 0.0;
  if (out) {
    out->assignment = assignment;
    out->power_w.assign(N, 0.0);
    out->rate_bps.assign(N, 0.0);
  }
  for (int i = 0; i < I; ++i) {
    std::vector<int> subs;
    std::vector<double> gains;
    for (int n = 0; n < N; ++n)
      if (assignment[n] == i) {
        subs.push_back(n);
        gains.push_back(gm.at(n, i));
      }
    WaterfillResult wf =
        group_waterfill(subs, gains, D * part.groups[i].size(), cfg);
    for (size_t j = 0; j < subs.size(); ++j) {
      total += wf.power_w[j];
      if (out) {
        out->power_w[subs[j]] = wf.power_w[j];
        out->rate_bps[subs[j]] = wf.rate_bps[j];
      }
    }
  }
  if (out) out->total_power_w = total;
  return total;
}

// Best-improvement local search over the subcarrier assignment: single
// moves (donor keeps at least one subcarrier), pairwise swaps, and, when
// neither improves, cyclic relabelings over three subcarriers as an
// escape. Mutates assignment/count in place; returns the repaired power.
double local_search(const GroupPartition& part, const GainMatrix& gm,
                    const OfdmaConfig& cfg, double D,
                    std::vector<int>& assignment, std::vector<int>& count) {
  const int N = gm.n;
  const int I = gm.i;
  double cur = repair_total_power(part, gm, cfg, D, assignment, nullptr);
  for (int pass = 0; pass < 4 * N; ++pass) {
    int move_n = -1, move_i = -1, swap_m = -1;
    double move_total = cur;
    for (int n = 0; n < N; ++n) {
      int from = assignment[n];
      if (count[from] >= 2) {
        for (int i = 0; i < I; ++i) {
          if (i == from) continue;
          assignment[n] = i;
          double tot = repair_total_power(part, gm, cfg, D, assignment, nullptr);
          assignment[n] = from;
          if (tot < move_total * (1.0 - 1e-12)) {
            move_total = tot;
            move_n = n;
            move_i = i;
            swap_m = -1;
          }
        }
      }
      for (int m = n + 1; m < N; ++m) {
        int other = assignment[m];
        if (other == from) continue;
        assignment[n] = other;
        assignment[m] = from;
        double tot = repair_total_power(part, gm, cfg, D, assignment, nullptr);
        assignment[n] = from;
        assignment[m] = other;
        if (tot < move_total * (1.0 - 1e-12)) {
          move_total = tot;
          move_n = n;
          move_i = other;
          swap_m = m;
        }
      }
    }
    if (move_n < 0) {
      bool rotated = false;
      for (int n = 0; n < N && !rotated; ++n) {
        for (int m = n + 1; m < N && !rotated; ++m) {
          if (assignment[m] == assignment[n]) continue;
          for (int l = m + 1; l < N && !rotated; ++l) {
            const int a = assignment[n], b = assignment[m], c = assignment[l];
            if (c == a || c == b) continue;
            const int perms[2][3] = {{b, c, a}, {c, a, b}};
            for (const auto& p : perms) {
              assignment[n] = p[0];
              assignment[m] = p[1];
              assignment[l] = p[2];
              double tot = repair_total_power(part, gm, cfg, D, assignment, nullptr);
              if (tot < cur * (1.0 - 1e-12)) {
                cur = tot;
                rotated = true;
                break;
              }
              assignment[n] = a;
              assignment[m] = b;
              assignment[l] = c;
            }
          }
        }
      }
      if (rotated) continue;
      break;
    }
    if (swap_m >= 0) {
      std::swap(assignment[move_n], assignment[swap_m]);
    } else {
      --count[assignment[move_n]];
      assignment[move_n] = move_i;
      ++count[move_i];
    }
    cur = move_total;
  }
  return cur;
}

}  // namespace

PowerMinResult solve(const GroupPartition& part, const ChannelState& ch,
                     double encoding_rate_bps, const OfdmaConfig& cfg,
                     const SubgradientOptions& opts) {
  cfg.validate();
  if (encoding_rate_bps < 0.0) throw DomainError("solve: negative encoding rate");
  const int N = cfg.n_subcarriers;
  const int I = part.group_count();
  if (I < 1) throw DomainError("solve: empty partition");
  if (ch.subcarriers() != N) throw DomainError("solve: channel/config subcarrier mismatch");
  if (I > N) throw InfeasibleError("solve: more groups than subcarriers");

  const double D = encoding_rate_bps;
  GainMatrix gm = effective_gain(part, ch);

  PowerMinResult res;
  res.multipliers.assign(I, 0.0);
  if (D == 0.0) {
    res.allocation.assignment.assign(N, 0);
    res.allocation.power_w.assign(N, 0.0);
    res.allocation.rate_bps.assign(N, 0.0);
    res.converged = true;
    res.unique_argmax = true;
    auto [lo, up] = power_bounds(part, ch, D, cfg);
    res.lower_bound_w = lo;
    res.upper_bound_w = up;
    return res;
  }

  DualWorkspace w = make_workspace(part, gm, cfg);

  // Warm start: per-group water level as if the group had all N
  // subcarriers to itself.
  std::vector<double> lambda(I, 0.0);
  {
    std::vector<int> all(N);
    std::vector<double> gains(N);
    for (int i = 0; i < I; ++i) {
      for (int n = 0; n < N; ++n) {
        all[n] = n;
        gains[n] = gm.at(n, i);
      }
      WaterfillResult wf = group_waterfill(all, gains, D * part.groups[i].size(), cfg);
      lambda[i] = wf.lambda * part.groups[i].size();
    }
  }

  const double alpha0 = 1.0 / (cfg.bandwidth_hz * I);
  std::vector<double> log2_lambda(I), delivered(I);
  std::vector<int> best(N, 0);
  std::vector<double> lambda_best = lambda;
  double best_dual = -std::numeric_limits<double>::infinity();
  bool converged = false;
  long t = 0;
  long last_improve = 0;

  while (t < opts.max_iters) {
    ++t;
    for (int i = 0; i < I; ++i) {
      log2_lambda[i] = lambda[i] > 0.0 ? std::log2(lambda[i]) : 0.0;
      delivered[i] = 0.0;
    }
    double sum_w = 0.0;
    for (int n = 0; n < N; ++n) {
      size_t row = static_cast<size_t>(n) * I;
      int bi = 0;
      double bw = metric_w(w, row, 0, lambda[0], log2_lambda[0]);
      for (int i = 1; i < I; ++i) {
        double wi = metric_w(w, row + i, i, lambda[i], log2_lambda[i]);
        if (wi > bw) {
          bw = wi;
          bi = i;
        }
      }
      best[n] = bi;
      sum_w += bw;
      if (lambda[bi] > w.c[row + bi])
        delivered[bi] += cfg.bandwidth_hz * (log2_lambda[bi] - w.logc[row + bi]);
    }

    double dual = -sum_w;
    for (int i = 0; i < I; ++i) dual += lambda[i] * D;
    if (dual - best_dual > 1e-12 * std::abs(dual)) {
      best_dual = dual;
      lambda_best = lambda;
      last_improve = t;
    }

    bool ok = true;
    for (int i = 0; i < I; ++i) {
      double target = D * part.groups[i].size();
      if (std::abs(delivered[i] - target) > opts.rel_tol * target) {
        ok = false;
        break;
      }
    }
    if (ok) {
      converged = true;
      lambda_best = lambda;
      break;
    }
    // The discrete assignment gives the dual a kink at the optimum; once
    // the best dual value stops moving, further ascent only oscillates.
    if (t - last_improve > 5000) break;

    double step = alpha0 / std::sqrt(static_cast<double>(t));
    for (int i = 0; i < I; ++i) {
      double residual = D - delivered[i] / part.groups[i].size();
      lambda[i] = std::max(0.0, lambda[i] + step * residual);
    }
  }

  // Frozen assignment from the best dual iterate (ties -> lowest group).
  std::vector<int> assignment(N, 0);
  bool unique = true;
  for (int i = 0; i < I; ++i)
    log2_lambda[i] = lambda_best[i] > 0.0 ? std::log2(lambda_best[i]) : 0.0;
  for (int n = 0; n < N; ++n) {
    size_t row = static_cast<size_t>(n) * I;
    int bi = 0;
    double bw = metric_w(w, row, 0, lambda_best[0], log2_lambda[0]);
    double second = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < I; ++i) {
      double wi = metric_w(w, row + i, i, lambda_best[i], log2_lambda[i]);
      if (wi > bw) {
        second = bw;
        bw = wi;
        bi = i;
      } else {
        second = std::max(second, wi);
      }
    }
    assignment[n] = bi;
    if (I > 1 && bw - second <= 1e-12 + 1e-6 * std::abs(bw)) unique = false;
  }

  // Starved-group fallback: every group needs at least one subcarrier.
  // Candidates are costed by the donor's power change plus the starved
  // group's single-carrier power, so other still-starved groups do not
  // enter the comparison.
  std::vector<int> count(I, 0);
  for (int n = 0; n < N; ++n) ++count[assignment[n]];
  auto group_power = [&](int i, int skip_n) {
    std::vector<int> subs;
    std::vector<double> gains;
    for (int n = 0; n < N; ++n)
      if (assignment[n] == i && n != skip_n) {
        subs.push_back(n);
        gains.push_back(gm.at(n, i));
      }
    WaterfillResult wf = group_waterfill(subs, gains, D * part.groups[i].size(), cfg);
    double total = 0.0;
    for (double p : wf.power_w) total += p;
    return total;
  };
  for (int i = 0; i < I; ++i) {
    while (count[i] == 0) {
      int best_n = -1;
      double best_delta = std::numeric_limits<double>::infinity();
      for (int n = 0; n < N; ++n) {
        int donor = assignment[n];
        if (count[donor] < 2) continue;
        double delta = group_power(donor, n) - group_power(donor, -1) +
                       cfg.noise_w / gm.at(n, i) *
                           pow2m1(D * part.groups[i].size() / cfg.bandwidth_hz);
        if (delta < best_delta) {
          best_delta = delta;
          best_n = n;
        }
      }
      if (best_n < 0) throw InfeasibleError("solve: cannot satisfy all groups");
      --count[assignment[best_n]];
      assignment[best_n] = i;
      ++count[i];
    }
  }

  // The dual assignment can be off by a few subcarriers when the duality
  // gap is nonzero; a local search over moves, swaps and rotations closes
  // most of it. A second start from the proportional-share placement keeps
  // the result no worse than the equal-subcarrier heuristic.
  double cur = local_search(part, gm, cfg, D, assignment, count);
  {
    std::vector<int> alt_counts = equal_subcarrier_counts(part, N);
    std::vector<int> alt = equal_subcarrier_assignment(part, gm, alt_counts);
    std::vector<int> alt_count(I, 0);
    for (int n = 0; n < N; ++n) ++alt_count[alt[n]];
    double alt_cost = local_search(part, gm, cfg, D, alt, alt_count);
    if (alt_cost < cur) assignment = std::move(alt);
  }

  repair_total_power(part, gm, cfg, D, assignment, &res.allocation);

  res.primal_power_w = res.allocation.total_power_w;
  res.dual_power_w = best_dual;
  res.multipliers = lambda_best;
  res.iterations = t;
  res.converged = converged;
  res.unique_argmax = unique;
  auto [lo, up] = power_bounds(part, ch, D, cfg);
  res.lower_bound_w = lo;
  res.upper_bound_w = up;
  return res;
}

std::pair<double, double> power_bounds(const GroupPartition& part,
                                       const ChannelState& ch,
                                       double encoding_rate_bps,
                                       const OfdmaConfig& cfg) {
  const double B = cfg.bandwidth_hz;
  const double n0 = cfg.noise_w;
  const double N = cfg.n_subcarriers;
  const double sum_s = part.total_tiles;
  const double I = part.group_count();
  double lower = n0 * N / ch.max_gain() * pow2m1(encoding_rate_bps * sum_s / (B * N));
  double upper = n0 * I / ch.min_gain() * pow2m1(encoding_rate_bps * sum_s / B);
  return {lower, upper};
}

std::pair<double, double> scaling_check(const GroupPartition& part,
                                        const ChannelState& ch,
                                        double encoding_rate_bps,
                                        const OfdmaConfig& cfg, double g) {
  if (!(g > 0.0)) throw DomainError("scaling_check: g must be > 0");
  double p = solve(part, ch, encoding_rate_bps, cfg).primal_power_w;
  double ps = solve(part, ch.scaled(g), encoding_rate_bps, cfg).primal_power_w;
  return {p, ps};
}

void check_allocation(const Allocation& alloc, const GroupPartition& part,
                      const ChannelState& ch, double encoding_rate_bps,
                      const OfdmaConfig& cfg, double rel_tol,
                      double rate_tightness_tol) {
  const int N = cfg.n_subcarriers;
  const int I = part.group_count();
  const double D = encoding_rate_bps;
  if (static_cast<int>(alloc.assignment.size()) != N ||
      static_cast<int>(alloc.power_w.size()) != N ||
      static_cast<int>(alloc.rate_bps.size()) != N)
    throw DomainError("allocation: size mismatch");

  double total = 0.0;
  for (int n = 0; n < N; ++n) {
    int i = alloc.assignment[n];
    if (i < 0 || i >= I) throw DomainError("allocation: group index out of range");
    if (alloc.power_w[n] < 0.0) throw DomainError("allocation: negative power");
    if (alloc.rate_bps[n] < 0.0) throw DomainError("allocation: negative rate");
    total += alloc.power_w[n];
    // every user of the assigned group must be able to decode at this rate
    for (int k : part.groups[i].users) {
      double cap = cfg.bandwidth_hz *
                   std::log2(1.0 + alloc.power_w[n] * ch.at(n, k) / cfg.noise_w);
      if (cap < alloc.rate_bps[n] * (1.0 - rel_tol) - 1e-300)
        throw DomainError("allocation: per-user capacity below carried rate");
    }
  }
  if (std::abs(total - alloc.total_power_w) >
      1e-9 * std::max(total, 1.0e-12) + 1e-300)
    throw DomainError("allocation: total power inconsistent");

  for (int i = 0; i < I; ++i) {
    double delivered = 0.0;
    for (int n = 0; n < N; ++n)
      if (alloc.assignment[n] == i) delivered += alloc.rate_bps[n];
    double target = D * part.groups[i].size();
    if (delivered < target * (1.0 - rel_tol))
      throw DomainError("allocation: group rate requirement violated");
    if (D > 0.0 && std::abs(delivered - target) > rate_tightness_tol * target)
      throw DomainError("allocation: group rate not tight after repair");
  }
}

}  // namespace vrmcast
