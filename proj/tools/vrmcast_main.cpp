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

// Command-line front end: scenario parsing, subcommand dispatch, result
// serialization. Exit codes: 0 success, 1 input error, 2 infeasible,
// 3 internal tolerance failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vrmcast/baselines.hpp"
#include "vrmcast/oracle.hpp"
#include "vrmcast/powermin.hpp"
#include "vrmcast/qualitymax.hpp"
#include "vrmcast/scenario.hpp"
#include "vrmcast/sim.hpp"

namespace {

using nlohmann::json;
using namespace vrmcast;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTolerance = 3;

struct ToleranceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void ensure_out_dir(const std::string& out) {
  std::filesystem::create_directories(out);
}

int run_power_min(const std::string& scenario_path, const std::string& out,
                  std::optional<std::uint64_t> seed_flag) {
  Scenario s = load_scenario(scenario_path);
  if (!s.encoding_rate_bps)
    throw DomainError("scenario: missing field 'encoding_rate_bps' (power mode)");
  if (s.budget_w)
    throw DomainError("scenario: field 'budget_w' not allowed in power mode");
  if (seed_flag) s.seed = *seed_flag;

  std::mt19937_64 view_rng = make_stream_rng(s.seed, 0x76696577ULL, 0);
  ZipfModel zm{s.zipf_gamma, s.video.m_h, s.video.m_v};
  SystemViewState state = draw_view_state(zm, s.users, view_rng);
  GroupPartition part = partition(required_tiles(state, s.video));

  ChannelModel cm{s.pathloss_d, s.ofdma.n_subcarriers, s.users};
  json results = json::array();
  std::string csv =
      "channel_index,total_power_w,dual_power_w,lower_bound_w,upper_bound_w,"
      "converged,unique_argmax,iterations\n";
  char buf[256];
  for (int c = 0; c < s.n_channel_states; ++c) {
    std::mt19937_64 ch_rng = make_stream_rng(s.seed, 0x6368616e6e656cULL, c);
    ChannelState ch = draw_channel(cm, ch_rng);
    PowerMinResult res = solve(part, ch, *s.encoding_rate_bps, s.ofdma);
    try {
      check_allocation(res.allocation, part, ch, *s.encoding_rate_bps, s.ofdma);
    } catch (const DomainError& e) {
      throw ToleranceFailure(e.what());
    }
    results.push_back(powermin_result_to_json(res));
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%d,%d,%ld\n", c,
                  res.primal_power_w, res.dual_power_w, res.lower_bound_w,
                  res.upper_bound_w, res.converged ? 1 : 0,
                  res.unique_argmax ? 1 : 0, res.iterations);
    csv += buf;
  }

  json doc;
  doc["scenario"] = scenario_to_json(s);
  doc["partition"] = partition_to_json(part);
  doc["results"] = results;
  ensure_out_dir(out);
  write_file_atomic(out + "/power_min.json", doc.dump(2) + "\n");
  write_file_atomic(out + "/power_min.csv", csv);
  std::printf("power-min: %d channel states solved, results in %s\n",
              s.n_channel_states, out.c_str());
  return kExitOk;
}

int run_quality_max(const std::string& scenario_path, const std::string& out,
                    std::optional<std::uint64_t> seed_flag, long sample,
                    bool summary_only, const std::string& scheme,
                    const std::string& metric) {
  Scenario s = load_scenario(scenario_path);
  if (!s.budget_w)
    throw DomainError("scenario: missing field 'budget_w' (quality mode)");
  if (!s.min_gain)
    throw DomainError("scenario: missing field 'min_gain' (quality mode)");
  if (s.encoding_rate_bps)
    throw DomainError("scenario: field 'encoding_rate_bps' not allowed in quality mode");
  if (seed_flag) s.seed = *seed_flag;
  if (*s.budget_w == 0.0)
    throw InfeasibleError("quality-max: zero power budget supports only rate 0");

  QualityScenario scn{s.video, s.ofdma, s.users, *s.budget_w, *s.min_gain};
  EnumOptions opts;
  opts.sample = sample;
  opts.seed = s.seed;
  opts.keep_per_state = !summary_only;
  opts.metric = metric == "printed" ? GreedyMetric::kAsPrinted
                                    : GreedyMetric::kRateAware;

  json doc;
  doc["scenario"] = scenario_to_json(s);
  doc["scheme"] = scheme;
  if (scheme == "proposed") {
    QualityResult res = solve_quality(scn, opts);
    doc["result"] = quality_result_to_json(res, summary_only);
  } else {
    BaselineKind kind = scheme == "unicast" ? BaselineKind::kUnicast
                                            : BaselineKind::kEqualSubcarrier;
    doc["result"] = {{"rate_bps", baseline_quality(kind, scn, opts)}};
  }
  ensure_out_dir(out);
  write_file_atomic(out + "/quality_max.json", doc.dump(2) + "\n");
  std::printf("quality-max: scheme %s, rate %.6g bit/s, results in %s\n",
              scheme.c_str(), doc["result"]["rate_bps"].get<double>(), out.c_str());
  return kExitOk;
}

int run_experiment(const std::string& scenario_path, const std::string& out,
                   std::optional<std::uint64_t> seed_flag, const std::string& mode,
                   const std::string& gammas_flag, long sample) {
  Scenario s = load_scenario(scenario_path);
  if (seed_flag) s.seed = *seed_flag;

  ExperimentSpec spec;
  spec.video = s.video;
  spec.ofdma = s.ofdma;
  spec.users = s.users;
  spec.pathloss_d = s.pathloss_d;
  spec.n_channel_states = s.n_channel_states;
  spec.n_view_draws = s.n_view_draws;
  spec.seed = s.seed;
  spec.quality_sample = sample;

  if (!gammas_flag.empty()) {
    std::stringstream ss(gammas_flag);
    std::string tok;
    while (std::getline(ss, tok, ',')) spec.gammas.push_back(std::stod(tok));
  } else if (s.gammas) {
    spec.gammas = *s.gammas;
  } else {
    spec.gammas = {s.zipf_gamma};
  }

  std::vector<ExperimentRow> rows;
  if (mode == "power") {
    spec.mode = ExperimentMode::kPower;
    if (!s.encoding_rate_bps)
      throw DomainError("scenario: missing field 'encoding_rate_bps' (power mode)");
    spec.encoding_rate_bps = *s.encoding_rate_bps;
    rows = run_power_experiment(spec);
  } else if (mode == "quality") {
    spec.mode = ExperimentMode::kQuality;
    if (!s.budget_w) throw DomainError("scenario: missing field 'budget_w' (quality mode)");
    if (!s.min_gain) throw DomainError("scenario: missing field 'min_gain' (quality mode)");
    spec.budget_w = *s.budget_w;
    spec.min_gain = *s.min_gain;
    rows = run_quality_experiment(spec);
  } else {
    throw DomainError("experiment: --mode must be 'power' or 'quality'");
  }

  ensure_out_dir(out);
  write_file_atomic(out + "/experiment.csv", rows_to_csv(rows));
  json echo = scenario_to_json(s);
  echo["mode"] = mode;
  echo["resolved_gammas"] = spec.gammas;
  write_file_atomic(out + "/experiment_spec.json", echo.dump(2) + "\n");
  std::printf("experiment: %zu rows written to %s/experiment.csv\n", rows.size(),
              out.c_str());
  return kExitOk;
}

int run_verify(long trials, int max_n, int max_groups, std::uint64_t seed,
               bool inject_fault) {
  OracleBudget budget;
  budget.max_subcarriers = std::max(max_n, 8);
  budget.max_groups = std::max(max_groups, 4);

  long skipped = 0;
  long nonunique = 0;
  double worst_power_gap = 0.0;
  double worst_quality_gap = 0.0;
  const double fault = inject_fault ? 1.05 : 1.0;

  std::mt19937_64 rng = make_stream_rng(seed, 0x766572696679ULL, 0);
  std::uniform_int_distribution<int> n_dist(2, max_n);
  std::uniform_int_distribution<int> k_dist(1, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  for (long t = 0; t < trials; ++t) {
    int N = n_dist(rng);
    int K = k_dist(rng);
    // random per-user tile sets over a 20-tile space
    std::vector<TileSet> per_user(K);
    GroupPartition part;
    for (int attempt = 0;; ++attempt) {
      for (TileSet& ts : per_user) {
        ts.clear();
        for (int tile = 1; tile <= 20; ++tile)
          if (u(rng) < 0.2) ts.push_back(tile);
        if (ts.empty()) ts.push_back(1 + static_cast<int>(u(rng) * 20));
      }
      part = partition(per_user);
      if (part.group_count() <= std::min(max_groups, N)) break;
      if (attempt > 200) break;
    }
    if (part.group_count() > std::min(max_groups, N)) {
      ++skipped;
      continue;
    }

    OfdmaConfig cfg{N, 1.0, 1.0};
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> gains(static_cast<size_t>(N) * K);
    for (double& h : gains) do { h = exp1(rng); } while (!(h > 0.0));
    ChannelState ch(N, K, gains);
    double D = std::pow(10.0, -1.5 + 3.0 * u(rng));  // 3 decades around B

    try {
      PowerMinResult res = solve(part, ch, D, cfg);
      ExhaustivePowerMin ex = exhaustive_powermin(part, ch, D, cfg, budget);
      double gap = (res.primal_power_w * fault - ex.power_w) /
                   std::max(ex.power_w, 1e-300);
      double tol = res.unique_argmax ? 1e-6 : 2e-2;
      if (!res.unique_argmax) ++nonunique;
      worst_power_gap = std::max(worst_power_gap, gap);
      if (gap > tol || gap < -1e-9) {
        std::fprintf(stderr, "verify: power trial %ld gap %.3g exceeds tol %.3g\n",
                     t, gap, tol);
        return kExitTolerance;
      }

      double budget_w = 1.0 + 100.0 * u(rng);
      GreedyQuality g = greedy_quality(part, cfg, budget_w, 1.0);
      double dstar = exhaustive_quality(part, cfg, budget_w, 1.0, budget);
      double drelax = relaxed_quality(part, cfg, budget_w, 1.0).rate_bps;
      double qgap = (dstar - g.rate_bps * fault) / std::max(dstar, 1e-300);
      worst_quality_gap = std::max(worst_quality_gap, std::abs(qgap));
      // the oracle rate itself comes from a 1e-9 power bisection, so the
      // sandwich comparison needs more headroom than that
      if (g.rate_bps * fault > dstar * (1.0 + 1e-6) ||
          dstar > drelax * (1.0 + 1e-9)) {
        std::fprintf(stderr, "verify: quality sandwich violated at trial %ld\n", t);
        return kExitTolerance;
      }
    } catch (const OracleBudgetError&) {
      ++skipped;
    }
  }

  std::printf("verify: %ld trials, %ld skipped (oracle budget), %ld non-unique, "
              "worst power gap %.3g, worst quality gap %.3g\n",
              trials, skipped, nonunique, worst_power_gap, worst_quality_gap);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-group multicast OFDMA resource allocation for tiled 360 video"};
  app.require_subcommand(1);

  std::string scenario_path, out = ".", scheme = "proposed", mode = "power", gammas;
  std::string metric = "rate-aware";
  std::optional<std::uint64_t> seed_flag;
  long sample = 0, trials = 100;
  int max_n = 6, max_groups = 3;
  bool summary_only = false, inject_fault = false;
  std::uint64_t verify_seed = 1;

  auto* pm = app.add_subcommand("power-min", "Minimize total transmit power for a given encoding rate");
  pm->add_option("--scenario", scenario_path, "Scenario JSON path")->required();
  pm->add_option("--out", out, "Output directory");
  pm->add_option("--seed", seed_flag, "Override the scenario seed");

  auto* qm = app.add_subcommand("quality-max", "Maximize the common encoding rate under a power budget");
  qm->add_option("--scenario", scenario_path, "Scenario JSON path")->required();
  qm->add_option("--out", out, "Output directory");
  qm->add_option("--seed", seed_flag, "Override the scenario seed");
  qm->add_option("--sample", sample, "Sample this many view states instead of refusing large state spaces");
  qm->add_flag("--summary-only", summary_only, "Omit the per-state table");
  qm->add_option("--scheme", scheme, "proposed|unicast|equal")
      ->check(CLI::IsMember({"proposed", "unicast", "equal"}));
  qm->add_option("--metric", metric, "Greedy subcarrier metric: rate-aware|printed")
      ->check(CLI::IsMember({"rate-aware", "printed"}));

  auto* ex = app.add_subcommand("experiment", "Monte-Carlo comparison of schemes across Zipf exponents");
  ex->add_option("--scenario", scenario_path, "Scenario JSON path")->required();
  ex->add_option("--out", out, "Output directory");
  ex->add_option("--seed", seed_flag, "Override the scenario seed");
  ex->add_option("--mode", mode, "power|quality")
      ->check(CLI::IsMember({"power", "quality"}));
  ex->add_option("--gammas", gammas, "Comma-separated Zipf exponents");
  ex->add_option("--sample", sample, "View-state sample size (quality mode)");

  auto* vf = app.add_subcommand("verify", "Randomized solver-vs-oracle campaign");
  vf->add_option("--trials", trials, "Number of random instances");
  vf->add_option("--max-n", max_n, "Max subcarriers per instance");
  vf->add_option("--max-groups", max_groups, "Max groups per instance");
  vf->add_option("--seed", verify_seed, "Campaign seed");
  vf->add_flag("--inject-fault", inject_fault, "Perturb solver outputs (harness self-check)")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (pm->parsed()) return run_power_min(scenario_path, out, seed_flag);
    if (qm->parsed())
      return run_quality_max(scenario_path, out, seed_flag, sample, summary_only,
                             scheme, metric);
    if (ex->parsed())
      return run_experiment(scenario_path, out, seed_flag, mode, gammas, sample);
    if (vf->parsed())
      return run_verify(trials, max_n, max_groups, verify_seed, inject_fault);
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const ToleranceFailure& e) {
    std::fprintf(stderr, "tolerance failure: %s\n", e.what());
    return kExitTolerance;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
