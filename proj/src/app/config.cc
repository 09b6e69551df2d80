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

#include "powergame/app/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "powergame/app/output.h"
#include "powergame/errors.h"

namespace powergame::app {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& path, const std::string& message) {
  throw ConfigError("config field '" + path + "': " + message);
}

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Typed access to one JSON object that remembers which keys were read, so
// anything left over can be reported as unknown.
class Fields {
 public:
  Fields(const json& value, std::string path)
      : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) {
      Fail(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  bool Has(const std::string& key) {
    known_.insert(key);
    return value_.contains(key) && !value_.at(key).is_null();
  }

  const json& Raw(const std::string& key) {
    known_.insert(key);
    return value_.at(key);
  }

  std::string PathOf(const std::string& key) const { return Join(path_, key); }

  double Number(const std::string& key, double fallback) {
    if (!Has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_number()) Fail(PathOf(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) Fail(PathOf(key), "must be finite");
    return d;
  }

  std::int64_t Integer(const std::string& key, std::int64_t fallback) {
    if (!Has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_number_integer()) Fail(PathOf(key), "expected an integer");
    if (v.is_number_unsigned() &&
        v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      Fail(PathOf(key), "integer out of range");
    }
    return v.get<std::int64_t>();
  }

  std::uint64_t Seed(const std::string& key, std::uint64_t fallback) {
    if (!Has(key)) return fallback;
    const json& v = value_.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    Fail(PathOf(key), "expected a non-negative integer seed");
  }

  bool Bool(const std::string& key, bool fallback) {
    if (!Has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_boolean()) Fail(PathOf(key), "expected true or false");
    return v.get<bool>();
  }

  std::string String(const std::string& key, const std::string& fallback) {
    if (!Has(key)) return fallback;
    const json& v = value_.at(key);
    if (!v.is_string()) Fail(PathOf(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> Numbers(const std::string& key) {
    const json& v = Raw(key);
    if (!v.is_array()) Fail(PathOf(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const std::string item = PathOf(key) + "[" + std::to_string(k) + "]";
      if (!v[k].is_number()) Fail(item, "expected a number");
      out.push_back(v[k].get<double>());
      if (!std::isfinite(out.back())) Fail(item, "must be finite");
    }
    return out;
  }

  void RejectUnknown() const {
    for (const auto& [key, unused] : value_.items()) {
      if (!known_.count(key)) Fail(PathOf(key), "unknown key");
    }
  }

 private:
  const json& value_;
  std::string path_;
  std::set<std::string> known_;
};

PowerSpec ParsePower(const json& value, const std::string& path) {
  Fields f(value, path);
  PowerSpec spec;
  if (f.Has("levels_db")) {
    if (f.Has("min_db") || f.Has("max_db") || f.Has("levels")) {
      Fail(path, "give either levels_db or min_db/max_db/levels, not both");
    }
    spec.levels_db = f.Numbers("levels_db");
  } else {
    spec.min_db = f.Number("min_db", spec.min_db);
    spec.max_db = f.Number("max_db", spec.max_db);
    spec.levels = static_cast<int>(f.Integer("levels", spec.levels));
  }
  f.RejectUnknown();
  try {
    spec.Build();
  } catch (const std::invalid_argument& e) {
    Fail(path, e.what());
  }
  return spec;
}

GainGridSpec ParseGainGrid(const json& value, const std::string& path,
                           const GainGridSpec& defaults) {
  Fields f(value, path);
  GainGridSpec spec = defaults;
  spec.min = f.Number("min", spec.min);
  spec.max = f.Number("max", spec.max);
  spec.points = static_cast<int>(f.Integer("points", spec.points));
  f.RejectUnknown();
  if (spec.min < 0) Fail(Join(path, "min"), "gains must be >= 0");
  if (spec.points < 1) Fail(Join(path, "points"), "must be >= 1");
  if (spec.points == 1 && spec.min != spec.max) {
    Fail(Join(path, "points"), "a single point needs min == max");
  }
  if (spec.points > 1 && !(spec.min < spec.max)) {
    Fail(Join(path, "max"), "must exceed min when points > 1");
  }
  return spec;
}

ChannelSpec ParseChannel(const json& value, int players) {
  Fields f(value, "channel");
  ChannelSpec spec;
  if (f.Has("matrix")) {
    if (f.Has("grid") || f.Has("sweep")) {
      Fail("channel", "a fixed matrix cannot be combined with grid or sweep");
    }
    const json& m = f.Raw("matrix");
    if (!m.is_array() || static_cast<int>(m.size()) != players) {
      Fail("channel.matrix", "expected " + std::to_string(players) + " rows");
    }
    for (int j = 0; j < players; ++j) {
      const std::string row = "channel.matrix[" + std::to_string(j) + "]";
      if (!m[j].is_array() || static_cast<int>(m[j].size()) != players) {
        Fail(row, "expected " + std::to_string(players) + " gains");
      }
      std::vector<double> gains;
      for (const json& g : m[j]) {
        if (!g.is_number() || !std::isfinite(g.get<double>()) ||
            g.get<double>() < 0) {
          Fail(row, "gains must be finite numbers >= 0");
        }
        gains.push_back(g.get<double>());
      }
      spec.matrix.push_back(std::move(gains));
    }
  } else {
    if (f.Has("grid")) {
      spec.grid = ParseGainGrid(f.Raw("grid"), "channel.grid", spec.grid);
    }
    if (f.Has("sweep")) {
      Fields s(f.Raw("sweep"), "channel.sweep");
      const std::string mode = s.String("mode", "sample");
      if (mode == "sample") {
        spec.mode = SweepMode::kSample;
      } else if (mode == "enumerate") {
        spec.mode = SweepMode::kEnumerate;
      } else {
        Fail("channel.sweep.mode", "expected \"sample\" or \"enumerate\"");
      }
      spec.samples = static_cast<int>(s.Integer("samples", spec.samples));
      if (spec.samples < 1) Fail("channel.sweep.samples", "must be >= 1");
      spec.seed = s.Seed("seed", spec.seed);
      s.RejectUnknown();
    }
  }
  spec.state = f.Integer("state", 0);
  if (spec.state < 0) Fail("channel.state", "must be >= 0");
  f.RejectUnknown();
  return spec;
}

TypeSpec ParseTypes(const json& value, const GainGridSpec& channel_grid) {
  Fields f(value, "types");
  TypeSpec spec;
  const std::string mode = f.String("mode", "diagonal");
  if (mode == "diagonal") {
    spec.mode = TypeMode::kDiagonal;
  } else if (mode == "product") {
    spec.mode = TypeMode::kProduct;
  } else {
    Fail("types.mode", "expected \"diagonal\" or \"product\"");
  }
  spec.grid = channel_grid;
  if (f.Has("grid")) spec.grid = ParseGainGrid(f.Raw("grid"), "types.grid", spec.grid);
  if (f.Has("prior")) {
    const json& prior = f.Raw("prior");
    if (prior.is_string()) {
      if (prior.get<std::string>() != "uniform") {
        Fail("types.prior", "expected \"uniform\" or an array");
      }
    } else {
      spec.prior = f.Numbers("prior");
    }
  }
  f.RejectUnknown();
  return spec;
}

SolverSpec ParseSolver(const json& value) {
  Fields f(value, "solver");
  SolverSpec spec;
  try {
    spec.formulation = ParseFormulation(
        f.String("formulation", ToString(spec.formulation)));
  } catch (const std::invalid_argument& e) {
    Fail("solver.formulation", e.what());
  }
  spec.directions = static_cast<int>(f.Integer("directions", spec.directions));
  if (spec.directions < 4) Fail("solver.directions", "must be >= 4");
  for (auto [key, slot] : {std::pair{"feasibility_tol", &spec.feasibility_tol},
                           std::pair{"optimality_tol", &spec.optimality_tol},
                           std::pair{"pivot_tol", &spec.pivot_tol}}) {
    *slot = f.Number(key, *slot);
    if (!(*slot > 0)) Fail(f.PathOf(key), "must be > 0");
  }
  spec.max_variables = f.Integer("max_variables", spec.max_variables);
  if (spec.max_variables < 1) Fail("solver.max_variables", "must be >= 1");
  spec.max_iterations = f.Integer("max_iterations", spec.max_iterations);
  if (spec.max_iterations < 0) Fail("solver.max_iterations", "must be >= 0");
  f.RejectUnknown();
  return spec;
}

LearningSpec ParseLearning(const json& value) {
  Fields f(value, "learning");
  LearningSpec spec;
  spec.steps = f.Integer("steps", spec.steps);
  if (spec.steps < 1) Fail("learning.steps", "must be >= 1");
  spec.seed = f.Seed("seed", spec.seed);
  if (f.Has("mu")) {
    spec.mu = f.Number("mu", 0.0);
    if (!(*spec.mu > 0)) Fail("learning.mu", "must be > 0");
  }
  try {
    spec.rule = ParseRegretRule(f.String("regret_rule", ToString(spec.rule)));
  } catch (const std::invalid_argument& e) {
    Fail("learning.regret_rule", e.what());
  }
  f.RejectUnknown();
  return spec;
}

SweepSpec ParseSweep(const json& value) {
  Fields f(value, "sweep");
  SweepSpec spec;
  spec.states = f.Bool("states", spec.states);
  spec.regret = f.Bool("regret", spec.regret);
  spec.workers = static_cast<int>(f.Integer("workers", spec.workers));
  if (spec.workers < 0) Fail("sweep.workers", "must be >= 0");
  if (f.Has("action_levels_db")) {
    const json& grids = f.Raw("action_levels_db");
    if (!grids.is_array()) Fail("sweep.action_levels_db", "expected an array");
    for (std::size_t k = 0; k < grids.size(); ++k) {
      const std::string path = "sweep.action_levels_db[" + std::to_string(k) + "]";
      json wrapper = {{"levels_db", grids[k]}};
      spec.action_levels_db.push_back(ParsePower(wrapper, path).levels_db);
    }
  }
  f.RejectUnknown();
  return spec;
}

json GridJson(const GainGridSpec& g) {
  return {{"min", g.min}, {"max", g.max}, {"points", g.points}};
}

json PowerJson(const PowerSpec& p) {
  if (!p.levels_db.empty()) return {{"levels_db", p.levels_db}};
  return {{"min_db", p.min_db}, {"max_db", p.max_db}, {"levels", p.levels}};
}

}  // namespace

PowerGrid PowerSpec::Build() const {
  if (!levels_db.empty()) return PowerGridFromDb(levels_db);
  return BuildPowerGrid(min_db, max_db, levels);
}

std::vector<double> GainGridSpec::Values() const {
  std::vector<double> values;
  for (int k = 0; k < points; ++k) {
    values.push_back(k == points - 1 ? max
                                     : min + k * (max - min) / (points - 1));
  }
  return values;
}

LpOptions SolverSpec::ToLpOptions() const {
  LpOptions options;
  options.feasibility_tol = feasibility_tol;
  options.optimality_tol = optimality_tol;
  options.pivot_tol = pivot_tol;
  options.max_iterations = max_iterations;
  return options;
}

nlohmann::json ExperimentConfig::ToJson() const {
  json j;
  j["name"] = name;
  j["players"] = players;
  json power_list = json::array();
  for (const PowerSpec& p : power) power_list.push_back(PowerJson(p));
  j["power"] = power_list;
  if (channel.is_fixed()) {
    j["channel"] = {{"matrix", channel.matrix}, {"state", channel.state}};
  } else {
    j["channel"] = {
        {"grid", GridJson(channel.grid)},
        {"sweep",
         {{"mode", channel.mode == SweepMode::kSample ? "sample" : "enumerate"},
          {"samples", channel.samples},
          {"seed", channel.seed}}},
        {"state", channel.state}};
  }
  j["alpha"] = alpha;
  j["noise"] = noise;
  j["packet_len"] = packet_len;
  if (types) {
    j["types"] = {
        {"mode", types->mode == TypeMode::kDiagonal ? "diagonal" : "product"},
        {"grid", GridJson(types->grid)},
        {"prior", types->prior.empty() ? json("uniform") : json(types->prior)}};
  } else {
    j["types"] = nullptr;
  }
  j["solver"] = {{"formulation", ToString(solver.formulation)},
                 {"directions", solver.directions},
                 {"feasibility_tol", solver.feasibility_tol},
                 {"optimality_tol", solver.optimality_tol},
                 {"pivot_tol", solver.pivot_tol},
                 {"max_variables", solver.max_variables},
                 {"max_iterations", solver.max_iterations}};
  j["learning"] = {{"steps", learning.steps},
                   {"seed", learning.seed},
                   {"mu", learning.mu ? json(*learning.mu) : json(nullptr)},
                   {"regret_rule", ToString(learning.rule)}};
  j["sweep"] = {{"states", sweep.states},
                {"regret", sweep.regret},
                {"action_levels_db", sweep.action_levels_db},
                {"workers", sweep.workers}};
  j["output"] = {{"dir", output_dir}};
  return j;
}

std::string ExperimentConfig::Hash() const { return Sha256Hex(ToJson().dump()); }

ExperimentConfig ParseConfig(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0,
                                                  text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find("parse error"); pos != std::string::npos) {
      what = what.substr(pos);
    }
    throw ConfigError(std::string(source) + ":" + std::to_string(line) + ":" +
                      std::to_string(column) + ": invalid JSON (" + what + ")");
  }

  ExperimentConfig config;
  Fields f(root, "");
  config.name = f.String("name", config.name);
  config.players = static_cast<int>(f.Integer("players", config.players));
  if (config.players < 1 || config.players > 8) {
    Fail("players", "must be between 1 and 8");
  }
  if (f.Has("power")) {
    const json& power = f.Raw("power");
    if (power.is_array()) {
      if (static_cast<int>(power.size()) != config.players) {
        Fail("power", "expected one entry per player");
      }
      for (std::size_t i = 0; i < power.size(); ++i) {
        config.power.push_back(
            ParsePower(power[i], "power[" + std::to_string(i) + "]"));
      }
    } else {
      config.power.assign(config.players, ParsePower(power, "power"));
    }
  } else {
    config.power.assign(config.players, PowerSpec{});
  }
  config.channel = f.Has("channel")
                       ? ParseChannel(f.Raw("channel"), config.players)
                       : ChannelSpec{};
  config.alpha = f.Number("alpha", config.alpha);
  if (!(config.alpha > 0)) Fail("alpha", "must be > 0");
  config.noise = f.Number("noise", config.noise);
  if (!(config.noise > 0)) Fail("noise", "must be > 0");
  config.packet_len =
      static_cast<int>(f.Integer("packet_len", config.packet_len));
  if (config.packet_len < 1) Fail("packet_len", "must be >= 1");
  if (f.Has("types")) {
    config.types = ParseTypes(f.Raw("types"), config.channel.grid);
  }
  if (f.Has("solver")) config.solver = ParseSolver(f.Raw("solver"));
  if (f.Has("learning")) config.learning = ParseLearning(f.Raw("learning"));
  if (f.Has("sweep")) config.sweep = ParseSweep(f.Raw("sweep"));
  if (f.Has("output")) {
    Fields out(f.Raw("output"), "output");
    config.output_dir = out.String("dir", config.output_dir);
    out.RejectUnknown();
  }
  f.RejectUnknown();

  if (config.types) {
    // Validate the prior against the type space it will be attached to.
    try {
      BuildTypeSpace(config.players, config.types->grid.Values(),
                     config.types->mode, config.types->prior);
    } catch (const std::invalid_argument& e) {
      Fail("types.prior", e.what());
    }
  } else if (!config.sweep.action_levels_db.empty()) {
    config.warnings.push_back(
        "sweep.action_levels_db is ignored without a types section");
  }
  if (config.channel.is_fixed() && config.channel.state != 0) {
    Fail("channel.state", "a fixed matrix has only state 0");
  }
  return config;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), path.string());
}

}  // namespace powergame::app
