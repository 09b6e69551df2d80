// Copyright 2026 The powergame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "powergame/app/experiment.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "powergame/app/output.h"
#include "powergame/correlated.h"
#include "powergame/errors.h"
#include "powergame/format.h"
#include "powergame/random.h"
#include "powergame/regret.h"

namespace powergame::app {
namespace {

using nlohmann::json;

std::string OptionalNumber(const std::optional<double>& value) {
  return value ? FormatNumber(*value) : std::string();
}

json SummaryJson(const Summary& s) {
  return {{"count", s.count}, {"mean", s.mean}, {"std_error", s.std_error}};
}

bool IsSubset(const std::vector<double>& small, const std::vector<double>& big) {
  return std::all_of(small.begin(), small.end(), [&](double v) {
    return std::find(big.begin(), big.end(), v) != big.end();
  });
}

double Welfare(const std::vector<double>& payoffs) {
  double w = 0.0;
  for (double v : payoffs) w += v;
  return w;
}

// Runs job(k) for k in [0, count) on a bounded pool. The exception of the
// lowest failing index is rethrown after all workers stop.
template <typename Job>
void ParallelFor(std::int64_t count, int workers, Job job) {
  const int threads = static_cast<int>(
      std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(count, 1)));
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mutex;
  std::int64_t failed_index = count;
  std::exception_ptr failure;
  auto worker = [&] {
    while (!failed.load()) {
      const std::int64_t k = next.fetch_add(1);
      if (k >= count) return;
      try {
        job(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (k < failed_index) {
          failed_index = k;
          failure = std::current_exception();
        }
        failed.store(true);
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

GameInstance GameAt(const ExperimentConfig& config,
                    const ChannelMatrix& channel) {
  GameInstance game;
  game.channel = channel;
  for (const PowerSpec& p : config.power) game.grids.push_back(p.Build());
  game.alpha = config.alpha;
  game.noise = config.noise;
  game.packet_len = config.packet_len;
  game.Validate();
  return game;
}

std::vector<ChannelMatrix> ChannelStates(const ExperimentConfig& config) {
  const int k = config.players;
  if (config.channel.is_fixed()) return {ChannelMatrix(config.channel.matrix)};
  const std::vector<double> grid = config.channel.grid.Values();
  const int n = static_cast<int>(grid.size());
  const int links = k * k;
  std::vector<ChannelMatrix> states;
  auto make = [&](const std::vector<int>& digits) {
    std::vector<std::vector<double>> rows(k, std::vector<double>(k));
    for (int l = 0; l < links; ++l) rows[l / k][l % k] = grid[digits[l]];
    return ChannelMatrix(rows);
  };
  std::vector<int> digits(links, 0);
  if (config.channel.mode == SweepMode::kEnumerate) {
    const double total = std::pow(static_cast<double>(n), links);
    if (total > 1e7) {
      throw BudgetError("channel enumeration would visit " +
                        FormatNumber(total) +
                        " states; use sweep mode \"sample\"");
    }
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(total); ++s) {
      std::int64_t rest = s;
      for (int l = links - 1; l >= 0; --l) {
        digits[l] = static_cast<int>(rest % n);
        rest /= n;
      }
      states.push_back(make(digits));
    }
  } else {
    Rng rng(config.channel.seed);
    for (int s = 0; s < config.channel.samples; ++s) {
      for (int l = 0; l < links; ++l) {
        digits[l] = static_cast<int>(rng.Below(n));
      }
      states.push_back(make(digits));
    }
  }
  return states;
}

ChannelMatrix SelectedChannel(const ExperimentConfig& config,
                              std::optional<std::int64_t> state) {
  const std::int64_t index = state.value_or(config.channel.state);
  const std::vector<ChannelMatrix> states = ChannelStates(config);
  if (index < 0 || index >= static_cast<std::int64_t>(states.size())) {
    throw ConfigError("channel state " + std::to_string(index) +
                      " is out of range (0.." +
                      std::to_string(states.size() - 1) + ")");
  }
  return states[index];
}

StateResult SolveState(const ExperimentConfig& config,
                       const ChannelMatrix& channel, std::int64_t index,
                       bool with_regret) {
  const PayoffTensor tensor = BuildPayoffTensor(GameAt(config, channel));
  StateResult result;
  result.index = index;
  result.gains = channel.Rows();
  result.nash = EnumeratePureNash(tensor);
  for (const PureProfile& ne : result.nash) {
    const std::int64_t p = tensor.Encode(ne);
    std::vector<double> payoffs;
    for (int i = 0; i < tensor.num_players(); ++i) {
      payoffs.push_back(tensor.payoff(i, p));
    }
    const double w = Welfare(payoffs);
    if (!result.best_ne_welfare || w > *result.best_ne_welfare) {
      result.best_ne_welfare = w;
    }
    result.nash_payoffs.push_back(std::move(payoffs));
  }
  const EquilibriumReport ce =
      SolveWelfareCe(tensor, config.solver.ToLpOptions());
  result.ce_welfare = ce.welfare;
  result.ce_violation = ce.max_violation;
  if (with_regret) {
    const RegretRun run =
        RmRun(tensor, config.learning.steps,
              config.learning.seed + static_cast<std::uint64_t>(index),
              {config.learning.rule, config.learning.mu});
    result.regret_welfare = run.welfare;
    result.regret_ce_gap = run.ce_gap;
  }
  return result;
}

Summary Summarize(const std::vector<double>& values) {
  Summary s;
  s.count = static_cast<std::int64_t>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / static_cast<double>(s.count - 1)) /
                  std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

BayesianGame BayesianGameFor(
    const ExperimentConfig& config,
    const std::optional<std::vector<double>>& levels_db) {
  if (!config.types) {
    throw ConfigError("config field 'types': required for type-space runs");
  }
  const TypeSpace space =
      BuildTypeSpace(config.players, config.types->grid.Values(),
                     config.types->mode, config.types->prior);
  GameInstance base;
  base.channel = space.Channel(0);
  if (levels_db) {
    base.grids.assign(config.players, PowerGridFromDb(*levels_db));
  } else {
    for (const PowerSpec& p : config.power) base.grids.push_back(p.Build());
  }
  base.alpha = config.alpha;
  base.noise = config.noise;
  base.packet_len = config.packet_len;
  return BuildPowerControlFamily(space, base);
}

ActionSweepRow SolveActionGrid(const ExperimentConfig& config,
                               const std::vector<double>& levels_db) {
  const BayesianGame game = BayesianGameFor(config, levels_db);
  const LpOptions options = config.solver.ToLpOptions();
  ActionSweepRow row;
  row.actions = static_cast<int>(levels_db.size());
  row.levels_db = levels_db;

  const TypeSpace& space = game.space;
  const std::int64_t profiles = game.num_profiles();
  std::vector<double> average(profiles * space.num_players(), 0.0);
  for (std::int64_t t = 0; t < space.num_joint_types(); ++t) {
    const double q = space.prior[t];
    if (q == 0.0) continue;
    const PayoffTensor tensor = TensorAtType(game, t);
    row.ce_per_state += q * SolveWelfareCe(tensor, options).welfare;
    for (int i = 0; i < space.num_players(); ++i) {
      for (std::int64_t p = 0; p < profiles; ++p) {
        average[i * profiles + p] += q * tensor.payoff(i, p);
      }
    }
  }
  row.ce_average_game =
      SolveWelfareCe(PayoffTensor(game.dims, std::move(average)), options)
          .welfare;
  const CommEqResult literal = SolveCommEq(game, Formulation::kLiteral,
                                           options, config.solver.max_variables);
  const CommEqResult canonical = SolveCommEq(
      game, Formulation::kCanonical, options, config.solver.max_variables);
  row.commeq_literal = literal.welfare;
  row.literal_violation = literal.max_violation;
  row.commeq_canonical = canonical.welfare;
  row.canonical_violation = canonical.max_violation;
  return row;
}

SweepReport RunEquilibriumSweep(const ExperimentConfig& config, int workers) {
  if (workers <= 0) workers = config.sweep.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  SweepReport report;
  if (config.sweep.states) {
    const std::vector<ChannelMatrix> states = ChannelStates(config);
    spdlog::info("sweeping {} channel states on {} worker(s)", states.size(),
                 workers);
    report.states.resize(states.size());
    ParallelFor(static_cast<std::int64_t>(states.size()), workers,
                [&](std::int64_t k) {
                  report.states[k] =
                      SolveState(config, states[k], k, config.sweep.regret);
                  spdlog::debug("state {} done", k);
                });
    std::vector<double> ne, ce, rm;
    for (const StateResult& s : report.states) {
      if (s.best_ne_welfare) {
        ne.push_back(*s.best_ne_welfare);
      } else {
        ++report.states_without_ne;
      }
      ce.push_back(s.ce_welfare);
      if (s.regret_welfare) rm.push_back(*s.regret_welfare);
    }
    report.ne_welfare = Summarize(ne);
    report.ce_welfare = Summarize(ce);
    if (config.sweep.regret) report.regret_welfare = Summarize(rm);
  }
  if (config.types && !config.sweep.action_levels_db.empty()) {
    const auto& grids = config.sweep.action_levels_db;
    report.action_rows.resize(grids.size());
    ParallelFor(static_cast<std::int64_t>(grids.size()), workers,
                [&](std::int64_t k) {
                  spdlog::info("action grid with {} levels", grids[k].size());
                  report.action_rows[k] = SolveActionGrid(config, grids[k]);
                });
    report.nested_grids = true;
    for (std::size_t k = 1; k < grids.size(); ++k) {
      report.nested_grids = report.nested_grids && IsSubset(grids[k - 1], grids[k]);
      const ActionSweepRow& a = report.action_rows[k - 1];
      const ActionSweepRow& b = report.action_rows[k];
      constexpr double kSlack = 1e-9;
      if (b.commeq_literal < a.commeq_literal - kSlack) {
        report.literal_nondecreasing = false;
      }
      if (b.commeq_canonical < a.commeq_canonical - kSlack) {
        report.canonical_nondecreasing = false;
      }
    }
  }
  return report;
}

std::vector<std::filesystem::path> WriteSweep(const SweepReport& report,
                                              const ExperimentConfig& config,
                                              const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  json doc;
  doc["metadata"] = Metadata(config);
  doc["config"] = config.ToJson();
  if (config.sweep.states) {
    const int k = config.players;
    std::string csv = "state";
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) {
        csv += ",g" + std::to_string(j + 1) + std::to_string(i + 1);
      }
    }
    csv += ",ne_count,best_ne_welfare,ce_welfare,ce_violation";
    if (config.sweep.regret) csv += ",regret_welfare,regret_ce_gap";
    csv += "\n";
    for (const StateResult& s : report.states) {
      csv += std::to_string(s.index);
      for (const auto& row : s.gains) {
        for (double g : row) csv += "," + FormatNumber(g);
      }
      csv += "," + std::to_string(s.nash.size()) + "," +
             OptionalNumber(s.best_ne_welfare) + "," +
             FormatNumber(s.ce_welfare) + "," + FormatNumber(s.ce_violation);
      if (config.sweep.regret) {
        csv += "," + OptionalNumber(s.regret_welfare) + "," +
               OptionalNumber(s.regret_ce_gap);
      }
      csv += "\n";
    }
    written.push_back(WriteTextFile(dir, "sweep_states.csv", csv));
    json states = {{"count", report.states.size()},
                   {"states_without_ne", report.states_without_ne},
                   {"best_ne_welfare", SummaryJson(report.ne_welfare)},
                   {"ce_welfare", SummaryJson(report.ce_welfare)}};
    if (report.regret_welfare) {
      states["regret_welfare"] = SummaryJson(*report.regret_welfare);
    }
    doc["channel_sweep"] = states;
  }
  if (!report.action_rows.empty()) {
    std::string csv =
        "actions,ce_per_state,ce_average_game,commeq_literal,commeq_canonical\n";
    json rows = json::array();
    for (const ActionSweepRow& r : report.action_rows) {
      csv += std::to_string(r.actions) + "," + FormatNumber(r.ce_per_state) +
             "," + FormatNumber(r.ce_average_game) + "," +
             FormatNumber(r.commeq_literal) + "," +
             FormatNumber(r.commeq_canonical) + "\n";
      rows.push_back({{"actions", r.actions},
                      {"levels_db", r.levels_db},
                      {"ce_per_state", r.ce_per_state},
                      {"ce_average_game", r.ce_average_game},
                      {"commeq_literal", r.commeq_literal},
                      {"commeq_canonical", r.commeq_canonical},
                      {"literal_violation", r.literal_violation},
                      {"canonical_violation", r.canonical_violation}});
    }
    written.push_back(WriteTextFile(dir, "action_sweep.csv", csv));
    doc["action_sweep"] = {
        {"rows", rows},
        {"nested_grids", report.nested_grids},
        {"commeq_literal_nondecreasing", report.literal_nondecreasing},
        {"commeq_canonical_nondecreasing", report.canonical_nondecreasing}};
  }
  written.insert(written.begin(),
                 WriteTextFile(dir, "sweep.json", DumpJson(doc)));
  return written;
}

Regions ComputeRegions(const PayoffTensor& tensor, int directions) {
  if (tensor.num_players() != 2) {
    throw ConfigError("region export needs exactly 2 players");
  }
  Regions regions;
  regions.feasible_hull = FeasiblePayoffHull(tensor);
  regions.ce_region = CePayoffRegion(tensor, directions);
  for (const PureProfile& ne : EnumeratePureNash(tensor)) {
    const std::int64_t p = tensor.Encode(ne);
    regions.ne_points.push_back({tensor.payoff(0, p), tensor.payoff(1, p)});
  }
  if (tensor.dims()[0] == 2 && tensor.dims()[1] == 2) {
    for (const MixedEquilibrium& m : MixedNash2x2(tensor)) {
      if (!m.pure) regions.mixed_ne_points.push_back(m.payoffs);
    }
  }
  return regions;
}

std::vector<std::filesystem::path> ExportRegions(
    const Regions& regions, const ExperimentConfig& config,
    const json& parameters, const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, const std::vector<Point2>*>> files = {
      {"feasible_hull.csv", &regions.feasible_hull},
      {"ce_region.csv", &regions.ce_region},
      {"ne_points.csv", &regions.ne_points}};
  if (!regions.mixed_ne_points.empty()) {
    files.push_back({"mixed_ne_points.csv", &regions.mixed_ne_points});
  }
  std::vector<std::filesystem::path> written;
  json manifest;
  manifest["metadata"] = Metadata(config);
  manifest["parameters"] = parameters;
  json entries = json::array();
  for (const auto& [name, points] : files) {
    const std::string csv = PointsCsv(*points);
    written.push_back(WriteTextFile(dir, name, csv));
    entries.push_back({{"file", name},
                       {"points", points->size()},
                       {"sha256", Sha256Hex(csv)}});
  }
  manifest["files"] = entries;
  written.push_back(
      WriteTextFile(dir, "region_manifest.json", DumpJson(manifest)));
  return written;
}

}  // namespace powergame::app
