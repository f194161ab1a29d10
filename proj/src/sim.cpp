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

#include "vrmcast/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "vrmcast/powermin.hpp"

namespace vrmcast {

namespace {

constexpr std::uint64_t kChannelStream = 0x6368616e6e656cULL;  // "channel"
constexpr std::uint64_t kViewStream = 0x76696577ULL;           // "view"

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 make_stream_rng(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t index) {
  std::uint64_t s = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
  return std::mt19937_64(s);
}

std::vector<double> zipf_pmf(const ZipfModel& model) {
  if (model.m_h < 1 || model.m_v < 1) throw DomainError("ZipfModel: grid must be >= 1x1");
  if (model.gamma < 0.0) throw DomainError("ZipfModel: gamma must be >= 0");
  const int m = model.m_h * model.m_v;
  std::vector<double> p(m);
  double z = 0.0;
  for (int r = 1; r <= m; ++r) {
    p[r - 1] = std::pow(static_cast<double>(r), -model.gamma);
    z += p[r - 1];
  }
  for (double& x : p) x /= z;
  return p;
}

SystemViewState draw_view_state(const ZipfModel& model, int users,
                                std::mt19937_64& rng) {
  if (users < 1) throw DomainError("draw_view_state: users must be >= 1");
  std::vector<double> pmf = zipf_pmf(model);
  std::vector<double> cdf(pmf.size());
  double acc = 0.0;
  for (size_t r = 0; r < pmf.size(); ++r) {
    acc += pmf[r];
    cdf[r] = acc;
  }
  cdf.back() = 1.0;

  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemViewState state;
  state.directions.reserve(users);
  for (int k = 0; k < users; ++k) {
    double x = u(rng);
    int rank0 = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), x) -
                                 cdf.begin());
    // rank = (m_h - 1) * M_v + m_v
    state.directions.push_back(
        ViewDirection{rank0 / model.m_v + 1, rank0 % model.m_v + 1});
  }
  return state;
}

ChannelState draw_channel(const ChannelModel& model, std::mt19937_64& rng) {
  if (!(model.pathloss_d > 0.0)) throw DomainError("ChannelModel: pathloss_d must be > 0");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> gains(static_cast<size_t>(model.n_subcarriers) * model.users);
  for (double& h : gains) {
    do {
      h = -std::log1p(-u(rng)) / model.pathloss_d;
    } while (!(h > 0.0));
  }
  return ChannelState(model.n_subcarriers, model.users, std::move(gains));
}

namespace {

double scheme_power(const std::string& scheme, const SystemViewState& state,
                    const GroupPartition& signature_part, const ChannelState& ch,
                    const ExperimentSpec& spec) {
  if (scheme == "proposed")
    return solve(signature_part, ch, spec.encoding_rate_bps, spec.ofdma)
        .primal_power_w;
  if (scheme == "unicast")
    return baseline_power(BaselineKind::kUnicast, state, ch,
                          spec.encoding_rate_bps, spec.video, spec.ofdma);
  if (scheme == "equal")
    return baseline_power(BaselineKind::kEqualSubcarrier, state, ch,
                          spec.encoding_rate_bps, spec.video, spec.ofdma);
  throw DomainError("unknown scheme: " + scheme);
}

}  // namespace

std::vector<ExperimentRow> run_power_experiment(const ExperimentSpec& spec) {
  spec.video.validate();
  spec.ofdma.validate();
  if (spec.gammas.empty()) throw DomainError("experiment: gamma list is empty");
  if (spec.n_channel_states < 1 || spec.n_view_draws < 1)
    throw DomainError("experiment: counts must be >= 1");

  // One shared channel set across gammas, draws and schemes.
  ChannelModel cm{spec.pathloss_d, spec.ofdma.n_subcarriers, spec.users};
  std::vector<ChannelState> channels;
  channels.reserve(spec.n_channel_states);
  for (int c = 0; c < spec.n_channel_states; ++c) {
    std::mt19937_64 rng = make_stream_rng(spec.seed, kChannelStream, c);
    channels.push_back(draw_channel(cm, rng));
  }

  const long n_gammas = static_cast<long>(spec.gammas.size());
  const long n_schemes = static_cast<long>(spec.schemes.size());
  const long cells = n_gammas * spec.n_view_draws;

  // per-cell per-scheme mean over channels; NaN marks a failed cell
  std::vector<double> cell_mean(cells * n_schemes,
                                std::numeric_limits<double>::quiet_NaN());

#pragma omp parallel for schedule(dynamic) if (spec.parallel)
  for (long cell = 0; cell < cells; ++cell) {
    long gi = cell / spec.n_view_draws;
    long v = cell % spec.n_view_draws;
    ZipfModel zm{spec.gammas[gi], spec.video.m_h, spec.video.m_v};
    std::mt19937_64 rng = make_stream_rng(spec.seed, kViewStream, cell);
    SystemViewState state = draw_view_state(zm, spec.users, rng);
    GroupPartition part = partition(required_tiles(state, spec.video));
    for (long si = 0; si < n_schemes; ++si) {
      double sum = 0.0;
      bool ok = true;
      try {
        for (const ChannelState& ch : channels)
          sum += scheme_power(spec.schemes[si], state, part, ch, spec);
      } catch (const std::exception&) {
        ok = false;
      }
      if (ok) cell_mean[cell * n_schemes + si] = sum / spec.n_channel_states;
    }
  }

  std::vector<ExperimentRow> rows;
  for (long gi = 0; gi < n_gammas; ++gi) {
    for (long si = 0; si < n_schemes; ++si) {
      double sum = 0.0, sum2 = 0.0;
      long ok = 0, failed = 0;
      for (long v = 0; v < spec.n_view_draws; ++v) {
        double x = cell_mean[(gi * spec.n_view_draws + v) * n_schemes + si];
        if (std::isnan(x)) {
          ++failed;
          continue;
        }
        sum += x;
        sum2 += x * x;
        ++ok;
      }
      ExperimentRow row;
      row.gamma = spec.gammas[gi];
      row.scheme = spec.schemes[si];
      row.metric = "mean_power_w";
      row.seed = spec.seed;
      row.n_samples = ok * spec.n_channel_states;
      row.n_failed = failed;
      if (ok > 0) {
        row.value = sum / ok;
        if (ok > 1) {
          double var = (sum2 - sum * sum / ok) / (ok - 1);
          row.stderr_ = std::sqrt(std::max(0.0, var) / ok);
        }
      } else {
        row.value = std::numeric_limits<double>::quiet_NaN();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ExperimentRow> run_quality_experiment(const ExperimentSpec& spec) {
  if (spec.gammas.empty()) throw DomainError("experiment: gamma list is empty");
  QualityScenario scn{spec.video, spec.ofdma, spec.users, spec.budget_w,
                      spec.min_gain};
  EnumOptions opts;
  opts.sample = spec.quality_sample;
  opts.seed = spec.seed;
  opts.parallel = spec.parallel;
  opts.keep_per_state = false;

  // The worst-case rate is a min over all view states; gamma never enters.
  std::vector<double> per_scheme(spec.schemes.size());
  for (size_t si = 0; si < spec.schemes.size(); ++si) {
    const std::string& scheme = spec.schemes[si];
    if (scheme == "proposed")
      per_scheme[si] = solve_quality(scn, opts).rate_bps;
    else if (scheme == "unicast")
      per_scheme[si] = baseline_quality(BaselineKind::kUnicast, scn, opts);
    else if (scheme == "equal")
      per_scheme[si] = baseline_quality(BaselineKind::kEqualSubcarrier, scn, opts);
    else
      throw DomainError("unknown scheme: " + scheme);
  }

  std::vector<ExperimentRow> rows;
  for (double gamma : spec.gammas) {
    for (size_t si = 0; si < spec.schemes.size(); ++si) {
      ExperimentRow row;
      row.gamma = gamma;
      row.scheme = spec.schemes[si];
      row.metric = "rate_bps";
      row.value = per_scheme[si];
      row.n_samples = 1;
      row.seed = spec.seed;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "gamma,scheme,metric,value,stderr,n_samples,seed\n";
  char buf[256];
  for (const ExperimentRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%s,%s,%.17g,%.17g,%ld,%llu\n", r.gamma,
                  r.scheme.c_str(), r.metric.c_str(), r.value, r.stderr_,
                  r.n_samples, static_cast<unsigned long long>(r.seed));
    out += buf;
  }
  return out;
}

}  // namespace vrmcast
