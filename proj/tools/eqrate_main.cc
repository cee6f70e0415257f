// Copyright 2026 The eqrate Authors.
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

// Command-line front end. Data goes to stdout (or --out), diagnostics to
// stderr. Exit codes: 0 ok, 1 usage, 2 file or input error, 3 infeasible
// epsilon, 4 solver did not converge.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eqrate/eqrate.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNoConvergence = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string game;
  std::string concept_name = "cce";
  std::string selection = "max-entropy";
  std::vector<std::string> epsilon;
  std::optional<double> epsilon_norm;
  double delta_abs = 1e-6;
  double delta_rel = 1e-4;
  std::string undefined = "mark";
  double group_tol = -1.0;
  std::string output;
  std::string out;
  std::string grid;
  std::string builder = "winprob";
  std::optional<double> tol;
  std::string csv;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("eqrate");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^[%l]%$ %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("EQRATE_LOG")) {
    static const std::map<std::string, spdlog::level::level_enum> levels = {
        {"error", spdlog::level::err},
        {"warn", spdlog::level::warn},
        {"info", spdlog::level::info},
        {"debug", spdlog::level::debug}};
    const auto it = levels.find(env);
    if (it != levels.end()) {
      spdlog::set_level(it->second);
    } else {
      spdlog::warn("ignoring unknown EQRATE_LOG level \"{}\"", env);
    }
  }
}

eqrate::Concept parse_concept(const std::string& s) {
  if (s == "ce") return eqrate::Concept::kCE;
  if (s == "cce") return eqrate::Concept::kCCE;
  return eqrate::Concept::kMENE;
}

eqrate::Selection parse_selection(const std::string& s) {
  if (s == "max-gini") return eqrate::Selection::kMaxGini;
  if (s == "max-welfare") return eqrate::Selection::kMaxWelfare;
  return eqrate::Selection::kMaxEntropy;
}

eqrate::UndefinedPolicy parse_policy(const std::string& s) {
  if (s == "min-payoff") return eqrate::UndefinedPolicy::kAssignMinPayoff;
  if (s == "prune") return eqrate::UndefinedPolicy::kPruneAndRerate;
  return eqrate::UndefinedPolicy::kMarkUndefined;
}

double parse_number(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw UsageError(what + " is not a number: \"" + text + "\"");
  }
  return v;
}

eqrate::EpsilonMode epsilon_mode(const Options& o) {
  if (!o.epsilon.empty() && o.epsilon_norm) {
    throw UsageError("--epsilon and --epsilon-norm are mutually exclusive");
  }
  if (o.epsilon_norm) return eqrate::NormalizedEpsilon{*o.epsilon_norm};
  if (o.epsilon.empty() || (o.epsilon.size() == 1 && o.epsilon[0] == "eps-min-plus")) {
    return eqrate::MinPlusEpsilon{o.delta_abs, o.delta_rel};
  }
  eqrate::AbsoluteEpsilon abs;
  for (const auto& e : o.epsilon) abs.epsilon.push_back(parse_number(e, "--epsilon value"));
  return abs;
}

eqrate::SolveConfig solve_config(const Options& o, const eqrate::NormalFormGame& game) {
  const auto n = static_cast<std::size_t>(game.num_players());
  if (o.epsilon.size() > 1 && o.epsilon.size() != n) {
    throw UsageError("--epsilon takes 1 or " + std::to_string(n) + " values for this game");
  }
  eqrate::SolveConfig config;
  config.concept_kind = parse_concept(o.concept_name);
  config.selection = parse_selection(o.selection);
  config.epsilon_mode = epsilon_mode(o);
  return config;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw eqrate::FileError("cannot write " + o.out);
  f << text;
  spdlog::info("wrote {}", o.out);
}

eqrate::NormalFormGame load(const Options& o) {
  spdlog::debug("loading {}", o.game);
  eqrate::NormalFormGame game = eqrate::load_game_file(o.game);
  spdlog::info("loaded {}-player game with {} joints", game.num_players(), game.num_joints());
  return game;
}

int cmd_rate(const Options& o) {
  const eqrate::NormalFormGame game = load(o);
  eqrate::RateConfig config;
  config.solve = solve_config(o, game);
  config.policy = parse_policy(o.undefined);
  const eqrate::RatingReport report = eqrate::rate(game, config);
  if (!report.converged) throw NotConverged("solver did not converge");
  if (o.output == "json") {
    emit(o, eqrate::rating_report_to_json(report, o.group_tol).dump(2) + "\n");
  } else {
    emit(o, eqrate::rating_report_to_csv(report));
  }
  return 0;
}

int cmd_solve(const Options& o) {
  const eqrate::NormalFormGame game = load(o);
  const eqrate::EquilibriumSolution sol = eqrate::solve(game, solve_config(o, game));
  spdlog::info("solver finished after {} iterations", sol.iterations);
  if (!sol.converged) throw NotConverged("solver did not converge");
  if (o.output == "csv") {
    emit(o, eqrate::solution_to_csv(sol, game));
  } else {
    emit(o, eqrate::solution_to_json(sol).dump(2) + "\n");
  }
  return 0;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? first : spec.find(':', first + 1);
  if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos) {
    throw UsageError("--grid must look like start:stop:count");
  }
  const double start = parse_number(spec.substr(0, first), "grid start");
  const double stop = parse_number(spec.substr(first + 1, second - first - 1), "grid stop");
  const double count = parse_number(spec.substr(second + 1), "grid count");
  if (count < 2 || count != std::floor(count)) {
    throw UsageError("grid count must be an integer >= 2");
  }
  return eqrate::linear_grid(start, stop, static_cast<int>(count));
}

int cmd_sweep(const Options& o) {
  const std::vector<double> grid = parse_grid(o.grid);
  const eqrate::NormalFormGame game = load(o);
  eqrate::SweepOptions options;
  options.delta_abs = o.delta_abs;
  options.delta_rel = o.delta_rel;
  options.policy = parse_policy(o.undefined);
  const auto points = eqrate::epsilon_sweep(game, parse_concept(o.concept_name),
                                            parse_selection(o.selection), grid, options);
  for (const auto& pt : points) {
    if (pt.failed) spdlog::warn("rho={} failed: {}", pt.rho, pt.error);
    if (pt.clamped) spdlog::info("rho={} clamped to epsilon_min + delta", pt.rho);
  }
  if (o.output == "json") {
    emit(o, eqrate::sweep_to_json(points).dump(2) + "\n");
  } else {
    emit(o, eqrate::sweep_to_csv(points, game));
  }
  return 0;
}

int cmd_epsilon(const Options& o) {
  const eqrate::NormalFormGame game = load(o);
  const eqrate::Concept c = parse_concept(o.concept_name);
  const double eps_min = eqrate::epsilon_min(game, c).epsilon.front();
  const nlohmann::json doc = {{"concept", eqrate::to_string(c)},
                              {"eps_min", eps_min},
                              {"eps_uni", eqrate::epsilon_uniform(game, c)}};
  emit(o, doc.dump(2) + "\n");
  return 0;
}

int cmd_ingest(const Options& o) {
  const auto records = eqrate::read_match_csv(o.csv);
  spdlog::info("read {} match records", records.size());
  std::optional<eqrate::NormalFormGame> game;
  if (o.builder == "points") {
    game = eqrate::build_points_game(records);
  } else if (o.builder == "location") {
    game = eqrate::build_location_game(records);
  } else {
    game = eqrate::build_winprob_game(records);
  }
  emit(o, eqrate::dump_game(*game));
  return 0;
}

int cmd_eliminate(const Options& o) {
  const eqrate::NormalFormGame game = load(o);
  const auto [reduced, mapping] = eqrate::eliminate_exact_duplicates(game, o.tol);
  const nlohmann::json map_doc = eqrate::mapping_to_json(mapping, game, reduced);
  if (o.out.empty()) {
    const nlohmann::json doc = {{"game", eqrate::game_to_json(reduced)}, {"mapping", map_doc}};
    std::cout << doc.dump() << "\n";
    return 0;
  }
  emit(o, eqrate::dump_game(reduced));
  Options map_out = o;
  map_out.out = o.out + ".mapping.json";
  emit(map_out, map_doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Equilibrium-based strategy ratings for normal-form games"};
  app.require_subcommand(1);
  Options o;

  auto add_game = [&](CLI::App* cmd) {
    cmd->add_option("--game", o.game, "game document (JSON)")->required();
  };
  auto add_concept = [&](CLI::App* cmd) {
    cmd->add_option("--concept", o.concept_name, "solution concept")
        ->check(CLI::IsMember({"ce", "cce", "mene-2p0s"}))
        ->capture_default_str();
  };
  auto add_selection = [&](CLI::App* cmd) {
    cmd->add_option("--selection", o.selection, "equilibrium selection")
        ->check(CLI::IsMember({"max-entropy", "max-gini", "max-welfare"}))
        ->capture_default_str();
  };
  auto add_delta = [&](CLI::App* cmd) {
    cmd->add_option("--delta-abs", o.delta_abs, "absolute offset above epsilon_min")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--delta-rel", o.delta_rel, "relative offset above epsilon_min")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  };
  auto add_epsilon = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", o.epsilon,
                    "per-player epsilon list (comma separated), or eps-min-plus")
        ->delimiter(',');
    cmd->add_option("--epsilon-norm", o.epsilon_norm, "epsilon as a multiple of epsilon_uniform");
    add_delta(cmd);
  };
  auto add_undefined = [&](CLI::App* cmd) {
    cmd->add_option("--undefined", o.undefined, "policy for strategies without mass")
        ->check(CLI::IsMember({"mark", "min-payoff", "prune"}))
        ->capture_default_str();
  };
  // Options is shared by every subcommand, so the per-command default is
  // applied when the command runs.
  auto add_output = [&](CLI::App* cmd, const std::string& fallback) {
    cmd->add_option("--output", o.output, "output format (default " + fallback + ")")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
  };

  CLI::App* rate = app.add_subcommand("rate", "rate strategies under an equilibrium");
  add_game(rate);
  add_concept(rate);
  add_selection(rate);
  add_epsilon(rate);
  add_undefined(rate);
  rate->add_option("--group-tol", o.group_tol, "rating difference grouped as a tie (json)");
  add_output(rate, "csv");

  CLI::App* solve = app.add_subcommand("solve", "select an equilibrium joint distribution");
  add_game(solve);
  add_concept(solve);
  add_selection(solve);
  add_epsilon(solve);
  add_output(solve, "json");

  CLI::App* sweep = app.add_subcommand("sweep", "ratings across normalized epsilon");
  add_game(sweep);
  add_concept(sweep);
  add_selection(sweep);
  add_delta(sweep);
  add_undefined(sweep);
  sweep->add_option("--grid", o.grid, "rho grid start:stop:count")->required();
  add_output(sweep, "csv");

  CLI::App* ingest = app.add_subcommand("ingest", "build a game from match records");
  ingest->add_option("csv", o.csv, "match CSV with home,away,result")->required();
  ingest->add_option("--builder", o.builder, "game construction")
      ->check(CLI::IsMember({"winprob", "points", "location"}))
      ->capture_default_str();
  ingest->add_option("--out", o.out, "output path (default stdout)");

  CLI::App* eliminate = app.add_subcommand("eliminate", "merge repeated strategies");
  add_game(eliminate);
  eliminate->add_option("--tol", o.tol, "max-norm tolerance for identical slices")
      ->check(CLI::NonNegativeNumber);
  eliminate->add_option("--out", o.out,
                        "reduced game path; the mapping goes to <out>.mapping.json");

  CLI::App* epsilon = app.add_subcommand("epsilon", "report epsilon_min and epsilon_uniform");
  add_game(epsilon);
  add_concept(epsilon);
  epsilon->add_option("--out", o.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*rate) return cmd_rate(o);
    if (*solve) return cmd_solve(o);
    if (*sweep) return cmd_sweep(o);
    if (*ingest) return cmd_ingest(o);
    if (*eliminate) return cmd_eliminate(o);
    if (*epsilon) return cmd_epsilon(o);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const eqrate::InfeasibleError& e) {
    spdlog::error("infeasible: {}", e.what());
    return kExitInfeasible;
  } catch (const eqrate::ConvergenceError& e) {
    spdlog::error("{}", e.what());
    return kExitNoConvergence;
  } catch (const NotConverged& e) {
    spdlog::error("{}", e.what());
    return kExitNoConvergence;
  } catch (const eqrate::Error& e) {
    spdlog::error("{}", e.what());
    return kExitInput;
  }
  return kExitUsage;
}
