// Copyright 2026 The rmsearch Authors.
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

// Command-line front end. Every subcommand writes flat tables plus
// manifest.json under its output directory; wall-clock time goes to
// timing.json so the other files are reproducible byte for byte.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmsearch/errors.h"
#include "rmsearch/estimators.h"
#include "rmsearch/exploit.h"
#include "rmsearch/harness.h"
#include "rmsearch/matrix_game.h"
#include "rmsearch/ratings.h"
#include "rmsearch/regret.h"

namespace rmsearch {
namespace {

using nlohmann::json;

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, x);
  return buf;
}

class Output {
 public:
  Output(std::string dir, std::string command)
      : dir_(std::move(dir)), command_(std::move(command)),
        start_(std::chrono::steady_clock::now()) {
    std::filesystem::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return dir_ + "/" + name; }

  void write(const std::string& name, const std::string& contents) {
    std::ofstream out(path(name), std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path(name));
    out << contents;
    files_.push_back(name);
  }

  void finish(const json& config, uint64_t seed) {
    json manifest = {{"command", command_},
                     {"config", config},
                     {"seed", seed},
                     {"files", files_},
                     {"build", {{"version", RMSEARCH_VERSION}, {"compiler", __VERSION__}}}};
    std::ofstream(path("manifest.json")) << manifest.dump(2) << '\n';
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ofstream(path("timing.json")) << json{{"wall_seconds", secs}}.dump(2) << '\n';
    std::cout << "wrote " << dir_ << "\n";
  }

 private:
  std::string dir_;
  std::string command_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> files_;
};

json rm_json(const RmConfig& rm) {
  return {{"iterations", rm.iterations}, {"linear", rm.linear}, {"optimism", rm.optimism},
          {"seed", rm.seed}, {"trace_every", rm.trace_every}};
}

std::string policies_csv(const EquilibriumResult& result, const SubgameSpec& spec) {
  std::ostringstream out;
  out << "player,action,label,final_prob,avg_prob,avg_utility\n";
  for (size_t p = 0; p < result.action_counts.size(); ++p) {
    for (int a = 0; a < result.action_counts[p]; ++a) {
      const std::string label = p < spec.action_labels.size() && !spec.action_labels[p].empty()
                                    ? spec.action_labels[p][a]
                                    : std::to_string(a);
      out << p << ',' << a << ',' << label << ',' << fmt("%.8f", result.final_policies[p][a])
          << ',' << fmt("%.8f", result.average_policies[p][a]) << ','
          << fmt("%.8f", result.action_utilities[p][a]) << '\n';
    }
  }
  return out.str();
}

std::string exploitability_csv(const SubgameSpec& spec, const EquilibriumResult& result) {
  std::ostringstream out;
  out << "policy,player,best_response_value,policy_value,gain\n";
  for (auto [name, policies] : {std::pair{"final", &result.final_policies},
                                std::pair{"average", &result.average_policies}}) {
    const auto report = exploitability(spec, *policies);
    for (size_t p = 0; p < report.gains.size(); ++p) {
      out << name << ',' << p << ',' << fmt("%.8f", report.best_response_values[p]) << ','
          << fmt("%.8f", report.policy_values[p]) << ',' << fmt("%.8f", report.gains[p]) << '\n';
    }
    out << name << ",total,,," << fmt("%.8f", report.total) << '\n';
  }
  return out.str();
}

void add_rm_options(CLI::App* app, RmConfig* rm) {
  app->add_option("--iters", rm->iterations, "RM iterations")->check(CLI::PositiveNumber);
  app->add_option("--seed", rm->seed, "random seed");
  app->add_flag("!--no-linear", rm->linear, "disable linear weighting");
  app->add_flag("!--no-optimism", rm->optimism, "disable optimism");
}

int run(int argc, char** argv) {
  CLI::App app{"Regret-matching search on normal-form subgames"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir;
  app.add_option("--out", out_dir, "output directory (default out/<command>)");

  // solve-matrix
  auto* solve = app.add_subcommand("solve-matrix", "solve a matrix game with sampled RM");
  std::string game_file;
  RmConfig solve_rm;
  solve->add_option("game-file", game_file, "matrix game JSON")->required()->check(
      CLI::ExistingFile);
  add_rm_options(solve, &solve_rm);

  // seed-average
  auto* seeds = app.add_subcommand("seed-average", "final vs average policy across seeds");
  int rows = 10, cols = 10, num_seeds = 1000, num_games = 20;
  uint64_t master_seed = 0;
  RmConfig seed_rm;
  seed_rm.linear = false;
  seed_rm.optimism = false;
  bool variants = false;
  seeds->add_option("--rows", rows)->check(CLI::PositiveNumber);
  seeds->add_option("--cols", cols)->check(CLI::PositiveNumber);
  seeds->add_option("--seeds", num_seeds, "RM runs per game")->check(CLI::PositiveNumber);
  seeds->add_option("--games", num_games, "random games")->check(CLI::PositiveNumber);
  seeds->add_option("--iters", seed_rm.iterations)->check(CLI::PositiveNumber);
  seeds->add_option("--seed", master_seed, "master seed");
  seeds->add_flag("--linear-optimistic", variants, "use linear optimistic RM");

  // trace
  auto* trace = app.add_subcommand("trace", "average-policy exploitability over iterations");
  std::string trace_file;
  RmConfig trace_rm;
  trace_rm.trace_every = 16;
  trace->add_option("--game-file", trace_file)->required()->check(CLI::ExistingFile);
  trace->add_option("--every", trace_rm.trace_every)->check(CLI::PositiveNumber);
  add_rm_options(trace, &trace_rm);

  // play / evaluate-1v6 / sweep
  std::string config_file;
  auto* play = app.add_subcommand("play", "play one game per repetition with logs");
  play->add_option("--config", config_file)->required()->check(CLI::ExistingFile);
  auto* evaluate = app.add_subcommand("evaluate-1v6", "one agent A against N-1 copies of B");
  evaluate->add_option("--config", config_file)->required()->check(CLI::ExistingFile);
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate-1v6 across one search parameter");
  std::string axis_name;
  std::vector<double> values;
  sweep_cmd->add_option("--axis", axis_name)->required()->check(
      CLI::IsMember({"M", "iterations", "rollout_horizon"}));
  sweep_cmd->add_option("--values", values)->required()->delimiter(',');
  sweep_cmd->add_option("--config", config_file)->required()->check(CLI::ExistingFile);

  // rate
  auto* rate = app.add_subcommand("rate", "fit pairwise-outcome ratings");
  std::string dataset;
  RatingConfig rating;
  rate->add_option("--dataset", dataset, "game_id,player_id,rank table")->required()->check(
      CLI::ExistingFile);
  rate->add_option("--lambda", rating.lambda)->check(CLI::NonNegativeNumber);
  rate->add_option("--lr", rating.learning_rate)->check(CLI::PositiveNumber);
  rate->add_option("--steps", rating.steps)->check(CLI::PositiveNumber);
  rate->add_flag("--squared-norm", rating.squared_norm);

  // check-entropy-grad
  auto* entropy = app.add_subcommand("check-entropy-grad", "estimator vs exact gradient");
  int num_models = 10, outcomes = 5;
  long samples = 1000000;
  uint64_t entropy_seed = 0;
  entropy->add_option("--models", num_models)->check(CLI::PositiveNumber);
  entropy->add_option("--outcomes", outcomes)->check(CLI::Range(2, 1000));
  entropy->add_option("--samples", samples)->check(CLI::PositiveNumber);
  entropy->add_option("--seed", entropy_seed);

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  if (out_dir.empty()) out_dir = "out/" + command;

  if (*solve) {
    const SubgameSpec spec = matrix_subgame(load_matrix_game(game_file));
    const auto result = run_rm(spec, solve_rm);
    Output out(out_dir, command);
    out.write("policies.csv", policies_csv(result, spec));
    out.write("exploitability.csv", exploitability_csv(spec, result));
    std::cout << format_policies(result, spec);
    out.finish({{"game_file", game_file}, {"rm", rm_json(solve_rm)}}, solve_rm.seed);
  } else if (*seeds) {
    if (variants) seed_rm.linear = seed_rm.optimism = true;
    const auto report =
        seed_average_experiment(rows, cols, seed_rm, num_seeds, num_games, master_seed);
    std::ostringstream table, per_game;
    table << "quantity,value,std_error\n";
    per_game << "game";
    for (const char* q : SeedAverageReport::kQuantityNames) per_game << ',' << q;
    per_game << '\n';
    const auto means = report.means();
    for (size_t q = 0; q < 4; ++q) {
      table << SeedAverageReport::kQuantityNames[q] << ',' << fmt("%.6f", means[q]) << ','
            << fmt("%.6f", report.std_error[q]) << '\n';
    }
    for (size_t g = 0; g < report.per_game.size(); ++g) {
      per_game << g;
      for (double v : report.per_game[g]) per_game << ',' << fmt("%.6f", v);
      per_game << '\n';
    }
    Output out(out_dir, command);
    out.write("seed_average.csv", table.str());
    out.write("per_game.csv", per_game.str());
    std::cout << table.str();
    out.finish({{"rows", rows}, {"cols", cols}, {"seeds", num_seeds}, {"games", num_games},
                {"rm", rm_json(seed_rm)}},
               master_seed);
  } else if (*trace) {
    const SubgameSpec spec = matrix_subgame(load_matrix_game(trace_file));
    const auto result = run_rm(spec, trace_rm);
    std::ostringstream table;
    table << "iteration,exploitability\n";
    for (const auto& row : result.trace) {
      table << row.iteration << ',' << fmt("%.8f", row.exploitability) << '\n';
    }
    Output out(out_dir, command);
    out.write("trace.csv", table.str());
    std::cout << table.str();
    out.finish({{"game_file", trace_file},
                {"rm", rm_json(trace_rm)},
                {"trace_oracle", result.trace_oracle}},
               trace_rm.seed);
  } else if (*play) {
    ExperimentConfig config = load_experiment_config(config_file);
    if (!config.output_dir.empty() && app.get_option("--out")->count() == 0) {
      out_dir = config.output_dir;
    }
    if (config.seats.empty()) {
      config.seats.assign(Board::standard().num_players, config.agent_b);
      config.seats[0] = config.agent_a;
    }
    Output out(out_dir, command);
    std::ostringstream games;
    games << "game,seed,seat,agent,score,replay_ok\n";
    const auto board = std::make_shared<const Board>([&] {
      Board b = Board::standard();
      b.horizon = config.match.horizon;
      return b;
    }());
    for (int g = 0; g < config.num_games; ++g) {
      const uint64_t seed = mix_seed(config.seed, g);
      std::ostringstream log;
      const GameRecord record = play_game(config.seats, config.match, seed, g, &log);
      const json doc = to_json(record);
      const bool replay_ok = replay_game(doc, board) == record.final_state;
      out.write("game_" + std::to_string(g) + ".log", log.str());
      out.write("game_" + std::to_string(g) + ".json", doc.dump(1) + "\n");
      for (size_t p = 0; p < record.scores.size(); ++p) {
        games << g << ',' << seed << ',' << p << ',' << record.seats[p] << ','
              << fmt("%.6f", record.scores[p]) << ',' << (replay_ok ? 1 : 0) << '\n';
      }
      if (!replay_ok) throw std::runtime_error("game " + std::to_string(g) + " failed replay");
    }
    out.write("games.csv", games.str());
    std::cout << games.str();
    out.finish(config.raw, config.seed);
  } else if (*evaluate || *sweep_cmd) {
    ExperimentConfig config = load_experiment_config(config_file);
    if (!config.output_dir.empty() && app.get_option("--out")->count() == 0) {
      out_dir = config.output_dir;
    }
    Output out(out_dir, command);
    config.match.log_dir = out.path("logs");
    if (*evaluate) {
      const auto report =
          evaluate_1v6(config.agent_a, config.agent_b, config.num_games, config.seed,
                       config.match);
      out.write("games.csv", match_games_csv(report));
      out.write("summary.csv", match_summary_csv(report));
      out.write("outcomes.csv", match_outcomes_csv(report));
      std::cout << match_summary_csv(report);
    } else {
      const SweepAxis axis = sweep_axis_from_string(axis_name);
      const auto table = sweep(axis, values, config.agent_a, config.agent_b, config.num_games,
                               config.seed, config.match);
      out.write("sweep.csv", sweep_csv(axis, table));
      std::cout << sweep_csv(axis, table);
    }
    json recorded = config.raw;
    recorded["resolved_agent_a"] = to_json(config.agent_a);
    recorded["resolved_agent_b"] = to_json(config.agent_b);
    if (*sweep_cmd) {
      recorded["axis"] = axis_name;
      recorded["values"] = values;
    }
    out.finish(recorded, config.seed);
  } else if (*rate) {
    const auto data = dataset_from_outcomes(read_outcomes_csv(dataset));
    const auto ratings = fit_ratings(data, rating);
    Output out(out_dir, command);
    write_ratings_csv(out.path("ratings.csv"), data, ratings);
    std::ifstream in(out.path("ratings.csv"));
    std::cout << in.rdbuf();
    out.finish({{"dataset", dataset},
                {"lambda", rating.lambda},
                {"learning_rate", rating.learning_rate},
                {"steps", rating.steps},
                {"squared_norm", rating.squared_norm},
                {"pairs", data.pairs.size()},
                {"final_loss", fmt("%.8f", ratings.final_loss)}},
               0);
  } else if (*entropy) {
    std::vector<CategoricalModel> models;
    std::vector<double> ramp(outcomes);
    for (int k = 0; k < outcomes; ++k) ramp[k] = 0.5 * k;
    models.emplace_back(ramp);
    Rng rng(mix_seed(entropy_seed, 0xC0FFEE));
    while (static_cast<int>(models.size()) < num_models) {
      std::vector<double> logits(outcomes);
      for (double& l : logits) l = 4.0 * uniform01(rng) - 2.0;
      models.emplace_back(logits);
    }
    const auto rows_out = check_entropy_grad(models, samples, entropy_seed);
    Output out(out_dir, command);
    out.write("entropy_grad.csv", entropy_check_csv(rows_out));
    std::cout << entropy_check_csv(rows_out);
    out.finish({{"models", num_models}, {"outcomes", outcomes}, {"samples", samples}},
               entropy_seed);
  }
  return 0;
}

}  // namespace
}  // namespace rmsearch

int main(int argc, char** argv) {
  try {
    return rmsearch::run(argc, argv);
  } catch (const rmsearch::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
