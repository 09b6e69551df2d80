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

#include "powergame/app/cli.h"

#include <spdlog/spdlog.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "powergame/app/config.h"
#include "powergame/app/experiment.h"
#include "powergame/app/output.h"
#include "powergame/correlated.h"
#include "powergame/errors.h"
#include "powergame/format.h"
#include "powergame/regret.h"

namespace powergame::app {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::int64_t> state;
  std::string lp_dump;
};

struct Context {
  ExperimentConfig config;
  fs::path out_dir;
};

Context Load(const CommonOptions& common) {
  Context ctx;
  ctx.config = LoadConfig(common.config_path);
  for (const std::string& w : ctx.config.warnings) spdlog::warn("{}", w);
  if (common.state) ctx.config.channel.state = *common.state;
  ctx.out_dir = common.out_dir.empty() ? fs::path(ctx.config.output_dir)
                                       : fs::path(common.out_dir);
  return ctx;
}

json ProfileJson(const PayoffTensor& tensor, const GameInstance& game,
                 const PureProfile& profile) {
  const std::int64_t p = tensor.Encode(profile);
  std::vector<double> payoffs;
  for (int i = 0; i < tensor.num_players(); ++i) {
    payoffs.push_back(tensor.payoff(i, p));
  }
  double welfare = 0.0;
  for (double v : payoffs) welfare += v;
  return {{"profile", profile},
          {"powers", ProfilePowers(game, profile)},
          {"payoffs", payoffs},
          {"welfare", welfare}};
}

void MaybeDumpLp(const CommonOptions& common, const LpProblem& problem,
                 const std::string& name) {
  if (common.lp_dump.empty()) return;
  const fs::path parent = fs::path(common.lp_dump).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(common.lp_dump, std::ios::binary | std::ios::trunc);
  WriteLpDump(problem, name, out);
  if (!out) throw std::runtime_error("failed to write " + common.lp_dump);
}

std::string DistributionCsv(const PayoffTensor& tensor,
                            const JointDistribution& dist) {
  std::string csv = "profile";
  for (int i = 0; i < tensor.num_players(); ++i) {
    csv += ",a" + std::to_string(i + 1);
  }
  csv += ",probability\n";
  for (std::int64_t p = 0; p < tensor.num_profiles(); ++p) {
    csv += std::to_string(p);
    for (int a : tensor.Decode(p)) csv += "," + std::to_string(a);
    csv += "," + FormatNumber(dist.probs[p]) + "\n";
  }
  return csv;
}

json Finish(json summary, const std::vector<fs::path>& files) {
  json names = json::array();
  for (const fs::path& f : files) names.push_back(f.string());
  summary["files"] = names;
  return summary;
}

json GameDump(const CommonOptions& common) {
  const Context ctx = Load(common);
  const GameInstance game = GameAt(ctx.config, SelectedChannel(ctx.config));
  const PayoffTensor tensor = BuildPayoffTensor(game);
  const int k = tensor.num_players();
  std::string csv = "profile";
  for (int i = 0; i < k; ++i) csv += ",a" + std::to_string(i + 1);
  for (int i = 0; i < k; ++i) csv += ",p" + std::to_string(i + 1);
  for (int i = 0; i < k; ++i) csv += ",u" + std::to_string(i + 1);
  csv += "\n";
  for (std::int64_t p = 0; p < tensor.num_profiles(); ++p) {
    const std::vector<int> profile = tensor.Decode(p);
    csv += std::to_string(p);
    for (int a : profile) csv += "," + std::to_string(a);
    for (double x : ProfilePowers(game, profile)) csv += "," + FormatNumber(x);
    for (int i = 0; i < k; ++i) csv += "," + FormatNumber(tensor.payoff(i, p));
    csv += "\n";
  }
  json doc = {{"metadata", Metadata(ctx.config)},
              {"state", ctx.config.channel.state},
              {"channel", game.channel.Rows()},
              {"dims", tensor.dims()},
              {"min_payoff", tensor.MinPayoff()},
              {"max_payoff", tensor.MaxPayoff()}};
  const std::vector<fs::path> files = {
      WriteTextFile(ctx.out_dir, "game.csv", csv),
      WriteTextFile(ctx.out_dir, "game.json", DumpJson(doc))};
  return Finish({{"command", "game dump"}, {"profiles", tensor.num_profiles()}},
                files);
}

json Nash(const CommonOptions& common) {
  const Context ctx = Load(common);
  const GameInstance game = GameAt(ctx.config, SelectedChannel(ctx.config));
  const PayoffTensor tensor = BuildPayoffTensor(game);
  json equilibria = json::array();
  for (const PureProfile& ne : EnumeratePureNash(tensor)) {
    equilibria.push_back(ProfileJson(tensor, game, ne));
  }
  json doc = {{"metadata", Metadata(ctx.config)},
              {"state", ctx.config.channel.state},
              {"channel", game.channel.Rows()},
              {"pure_equilibria", equilibria}};
  if (tensor.num_players() == 2 && tensor.dims()[0] == 2 &&
      tensor.dims()[1] == 2) {
    json mixed = json::array();
    for (const MixedEquilibrium& m : MixedNash2x2(tensor)) {
      mixed.push_back({{"strategies", m.strategies},
                       {"payoffs", m.payoffs},
                       {"pure", m.pure}});
    }
    doc["equilibria_2x2"] = mixed;
  }
  const std::vector<fs::path> files = {
      WriteTextFile(ctx.out_dir, "nash.json", DumpJson(doc))};
  return Finish({{"command", "nash"}, {"pure_equilibria", equilibria.size()}},
                files);
}

json Ce(const CommonOptions& common, std::optional<double> direction) {
  const Context ctx = Load(common);
  const GameInstance game = GameAt(ctx.config, SelectedChannel(ctx.config));
  const PayoffTensor tensor = BuildPayoffTensor(game);
  const LpOptions options = ctx.config.solver.ToLpOptions();
  EquilibriumReport report;
  json objective;
  std::vector<double> weights(tensor.num_players(), 1.0);
  if (direction) {
    if (tensor.num_players() != 2) {
      throw ConfigError("--direction needs a 2-player game");
    }
    weights = {std::cos(*direction), std::sin(*direction)};
    report = SolveDirectionalCe(tensor, weights, options);
    objective = {{"type", "direction"}, {"theta", *direction},
                 {"weights", weights}};
  } else {
    report = SolveWelfareCe(tensor, options);
    objective = {{"type", "welfare"}};
  }
  if (!common.lp_dump.empty()) {
    LpProblem lp = BuildCeConstraints(tensor);
    for (std::int64_t p = 0; p < tensor.num_profiles(); ++p) {
      double c = 0.0;
      for (int i = 0; i < tensor.num_players(); ++i) {
        c += weights[i] * tensor.payoff(i, p);
      }
      lp.objective[p] = c;
    }
    MaybeDumpLp(common, lp, "CE");
  }
  json doc = {{"metadata", Metadata(ctx.config)},
              {"state", ctx.config.channel.state},
              {"channel", game.channel.Rows()},
              {"objective", objective},
              {"dims", tensor.dims()},
              {"distribution", report.distribution.probs},
              {"per_player_value", report.per_player_value},
              {"welfare", report.welfare},
              {"max_violation", report.max_violation}};
  const std::vector<fs::path> files = {
      WriteTextFile(ctx.out_dir, "ce.json", DumpJson(doc)),
      WriteTextFile(ctx.out_dir, "ce_distribution.csv",
                    DistributionCsv(tensor, report.distribution))};
  return Finish({{"command", "ce"},
                 {"welfare", report.welfare},
                 {"per_player_value", report.per_player_value},
                 {"max_violation", report.max_violation}},
                files);
}

json CommEq(const CommonOptions& common,
            const std::optional<std::string>& formulation_name) {
  Context ctx = Load(common);
  if (formulation_name) {
    try {
      ctx.config.solver.formulation = ParseFormulation(*formulation_name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const Formulation formulation = ctx.config.solver.formulation;
  const BayesianGame game = BayesianGameFor(ctx.config);
  if (!common.lp_dump.empty()) {
    MaybeDumpLp(common,
                BuildCommEqLp(game, formulation, ctx.config.solver.max_variables)
                    .problem,
                "COMMEQ");
  }
  const CommEqResult result =
      SolveCommEq(game, formulation, ctx.config.solver.ToLpOptions(),
                  ctx.config.solver.max_variables);
  json doc = {{"metadata", Metadata(ctx.config)},
              {"formulation", ToString(formulation)},
              {"dims", game.dims},
              {"joint_types", game.space.num_joint_types()},
              {"welfare", result.welfare},
              {"max_violation", result.max_violation},
              {"device", DeviceJson(result.device)}};
  const std::vector<fs::path> files = {
      WriteTextFile(ctx.out_dir, "device.json", DumpJson(doc))};
  return Finish({{"command", "commeq"},
                 {"formulation", ToString(formulation)},
                 {"welfare", result.welfare},
                 {"max_violation", result.max_violation}},
                files);
}

struct RegretFlags {
  std::optional<std::int64_t> steps;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> rule;
  std::optional<double> mu;
};

json Regret(const CommonOptions& common, const RegretFlags& flags) {
  Context ctx = Load(common);
  LearningSpec& learning = ctx.config.learning;
  if (flags.steps) {
    if (*flags.steps < 1) throw ConfigError("--steps must be >= 1");
    learning.steps = *flags.steps;
  }
  if (flags.seed) learning.seed = *flags.seed;
  if (flags.mu) learning.mu = *flags.mu;
  if (flags.rule) {
    try {
      learning.rule = ParseRegretRule(*flags.rule);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const GameInstance game = GameAt(ctx.config, SelectedChannel(ctx.config));
  const PayoffTensor tensor = BuildPayoffTensor(game);
  const RegretRun run = RmRun(tensor, learning.steps, learning.seed,
                              {learning.rule, learning.mu});
  const EquilibriumReport ce =
      SolveWelfareCe(tensor, ctx.config.solver.ToLpOptions());
  std::ostringstream trace;
  WriteTraceCsv(run.trace, trace);
  json doc = {{"metadata", Metadata(ctx.config)},
              {"state", ctx.config.channel.state},
              {"channel", game.channel.Rows()},
              {"steps", learning.steps},
              {"regret_rule", ToString(learning.rule)},
              {"mu", run.mu},
              {"initial_profile", run.initial_profile},
              {"welfare", run.welfare},
              {"ce_gap", run.ce_gap},
              {"payoff_spread", tensor.MaxPayoff() - tensor.MinPayoff()},
              {"welfare_ce", ce.welfare},
              {"empirical_distribution", run.empirical.probs}};
  const std::vector<fs::path> files = {
      WriteTextFile(ctx.out_dir, "regret_trace.csv", trace.str()),
      WriteTextFile(ctx.out_dir, "regret.json", DumpJson(doc))};
  return Finish({{"command", "regret"},
                 {"welfare", run.welfare},
                 {"ce_gap", run.ce_gap},
                 {"welfare_ce", ce.welfare}},
                files);
}

json Region(const CommonOptions& common, std::optional<int> directions) {
  Context ctx = Load(common);
  if (directions) {
    if (*directions < 4) throw ConfigError("--directions must be >= 4");
    ctx.config.solver.directions = *directions;
  }
  const GameInstance game = GameAt(ctx.config, SelectedChannel(ctx.config));
  const Regions regions = ComputeRegions(BuildPayoffTensor(game),
                                         ctx.config.solver.directions);
  const json parameters = {{"state", ctx.config.channel.state},
                           {"channel", game.channel.Rows()},
                           {"directions", ctx.config.solver.directions}};
  const std::vector<fs::path> files =
      ExportRegions(regions, ctx.config, parameters, ctx.out_dir);
  return Finish({{"command", "region"},
                 {"hull_vertices", regions.feasible_hull.size()},
                 {"ce_vertices", regions.ce_region.size()},
                 {"ne_points", regions.ne_points.size()},
                 {"mixed_ne_points", regions.mixed_ne_points.size()}},
                files);
}

struct SweepFlags {
  bool enumerate = false;
  std::optional<int> samples;
  int workers = 0;
};

json Sweep(const CommonOptions& common, const SweepFlags& flags) {
  Context ctx = Load(common);
  if (flags.enumerate) ctx.config.channel.mode = SweepMode::kEnumerate;
  if (flags.samples) {
    if (*flags.samples < 1) throw ConfigError("--samples must be >= 1");
    ctx.config.channel.samples = *flags.samples;
  }
  const SweepReport report = RunEquilibriumSweep(ctx.config, flags.workers);
  const std::vector<fs::path> files = WriteSweep(report, ctx.config, ctx.out_dir);
  json summary = {{"command", "sweep"}, {"states", report.states.size()}};
  if (!report.states.empty()) {
    summary["mean_ce_welfare"] = report.ce_welfare.mean;
    summary["mean_best_ne_welfare"] = report.ne_welfare.mean;
  }
  if (!report.action_rows.empty()) {
    json rows = json::array();
    for (const ActionSweepRow& r : report.action_rows) {
      rows.push_back({{"actions", r.actions},
                      {"ce_per_state", r.ce_per_state},
                      {"ce_average_game", r.ce_average_game},
                      {"commeq_literal", r.commeq_literal},
                      {"commeq_canonical", r.commeq_canonical}});
    }
    summary["action_sweep"] = rows;
  }
  return Finish(summary, files);
}

void ConfigureLogging(std::ostream& err) {
  (void)err;
  spdlog::set_pattern("[%l] %v");
  if (const char* level = std::getenv("POWERGAME_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  } else {
    spdlog::set_level(spdlog::level::warn);
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  ConfigureLogging(err);
  CLI::App app{"Power-control games: Nash, correlated and communication "
               "equilibria, regret matching"};
  app.require_subcommand(1);
  CommonOptions common;
  auto add_common = [&](CLI::App* cmd, bool with_state) {
    cmd->add_option("-c,--config", common.config_path, "Experiment config JSON")
        ->required();
    cmd->add_option("-o,--out", common.out_dir,
                    "Output directory (overrides output.dir)");
    if (with_state) {
      cmd->add_option("--state", common.state,
                      "Channel state index (overrides channel.state)");
    }
  };

  CLI::App* game = app.add_subcommand("game", "Payoff-tensor utilities");
  game->require_subcommand(1);
  CLI::App* dump = game->add_subcommand("dump", "Write the payoff tensor");
  add_common(dump, true);

  CLI::App* nash = app.add_subcommand("nash", "Enumerate pure Nash equilibria");
  add_common(nash, true);

  CLI::App* ce = app.add_subcommand("ce", "Solve a correlated-equilibrium LP");
  add_common(ce, true);
  std::optional<double> direction;
  bool welfare = false;
  auto* dir_opt = ce->add_option("--direction", direction,
                                 "Maximize cos(theta) u1 + sin(theta) u2");
  auto* welfare_flag =
      ce->add_flag("--welfare", welfare, "Maximize the sum of utilities");
  dir_opt->excludes(welfare_flag);
  ce->add_option("--lp-dump", common.lp_dump, "Also write the LP to this file");

  CLI::App* commeq =
      app.add_subcommand("commeq", "Solve the communication-equilibrium LP");
  add_common(commeq, false);
  std::optional<std::string> formulation;
  commeq->add_option("--formulation", formulation, "literal or canonical");
  commeq->add_option("--lp-dump", common.lp_dump,
                     "Also write the LP to this file");

  CLI::App* regret = app.add_subcommand("regret", "Run regret matching");
  add_common(regret, true);
  RegretFlags regret_flags;
  regret->add_option("--steps", regret_flags.steps, "Number of periods T");
  regret->add_option("--seed", regret_flags.seed, "Random seed");
  regret->add_option("--regret-rule", regret_flags.rule, "std or paper-literal");
  regret->add_option("--mu", regret_flags.mu, "Inertia constant");

  CLI::App* region =
      app.add_subcommand("region", "Export payoff-region polygons");
  add_common(region, true);
  std::optional<int> directions;
  region->add_option("--directions", directions, "Number of LP directions");

  CLI::App* sweep = app.add_subcommand("sweep", "Run the configured sweeps");
  add_common(sweep, false);
  SweepFlags sweep_flags;
  sweep->add_flag("--enumerate", sweep_flags.enumerate,
                  "Visit every grid channel state");
  sweep->add_option("--samples", sweep_flags.samples, "Sampled state count");
  sweep->add_option("--workers", sweep_flags.workers, "Worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    json summary;
    if (dump->parsed()) {
      summary = GameDump(common);
    } else if (nash->parsed()) {
      summary = Nash(common);
    } else if (ce->parsed()) {
      summary = Ce(common, direction);
    } else if (commeq->parsed()) {
      summary = CommEq(common, formulation);
    } else if (regret->parsed()) {
      summary = Regret(common, regret_flags);
    } else if (region->parsed()) {
      summary = Region(common, directions);
    } else if (sweep->parsed()) {
      summary = Sweep(common, sweep_flags);
    }
    out << summary.dump(2) << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const SolverStall& e) {
    err << "solver stalled: " << e.what() << "\n";
    return kExitStall;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace powergame::app
