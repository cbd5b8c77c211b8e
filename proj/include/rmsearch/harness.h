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

// Games between agents, 1-vs-rest evaluation, parameter sweeps and the
// small amount of file plumbing the CLI needs.

#ifndef RMSEARCH_HARNESS_H_
#define RMSEARCH_HARNESS_H_

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rmsearch/blueprint.h"
#include "rmsearch/grid_conquest.h"
#include "rmsearch/search.h"

namespace rmsearch {

enum class AgentKind { kBlueprint, kSearchBot, kBrBot };

struct AgentSpec {
  AgentKind kind = AgentKind::kBlueprint;
  SearchConfig search;  // unused by the blueprint agent

  std::string name() const;
};

// "blueprint" or {"kind": "searchbot", "M": 5, "iterations": 256, ...}.
AgentSpec agent_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const AgentSpec& agent);

struct MatchOptions {
  int horizon = 10;                   // board years
  double blueprint_temperature = 0.75;
  bool write_logs = false;            // per-game text and JSON logs
  std::string log_dir;                // required when write_logs
};

struct GameRecord {
  int index = 0;
  uint64_t seed = 0;
  std::vector<std::string> seats;  // agent name per seat
  std::vector<GameState> states;   // states[t] is the state before phase t
  std::vector<JointAction> joints;
  GameState final_state;
  ScoreVector scores;
};

// Plays one game. Seat p's decision at phase t draws from
// mix_seed(seed, t, p). If `log` is set, appends one record per phase with
// every agent's action and, for SearchBot, all players' subgame policies.
GameRecord play_game(const std::vector<AgentSpec>& seats, const MatchOptions& options,
                     uint64_t seed, int index = 0, std::ostream* log = nullptr);

nlohmann::json to_json(const GameRecord& record);
// Re-adjudicates the recorded orders from the initial state; returns the
// state reached. Throws ConfigError on malformed input.
GameState replay_game(const nlohmann::json& record, std::shared_ptr<const Board> board);

struct MatchReport {
  std::string agent_a;
  std::string agent_b;
  std::vector<int> a_seats;
  std::vector<uint64_t> seeds;
  std::vector<ScoreVector> scores;
  std::vector<std::vector<char>> survived;  // seat still had units or SCs
  double mean_a = 0.0;
  double std_error_a = 0.0;
  double mean_b = 0.0;  // per-seat average of the other agents
  double std_error_b = 0.0;

  int num_games() const { return static_cast<int>(scores.size()); }
};

// Game g seats A at g mod N and B everywhere else, seeded with
// mix_seed(seed, g).
MatchReport evaluate_1v6(const AgentSpec& agent_a, const AgentSpec& agent_b, int num_games,
                         uint64_t seed, const MatchOptions& options);

enum class SweepAxis { kActionsPerUnit, kIterations, kRolloutHorizon };
SweepAxis sweep_axis_from_string(const std::string& name);
std::string to_string(SweepAxis axis);

struct SweepRow {
  double value = 0.0;
  MatchReport report;
};

// One evaluation per value; every value reuses the master seed so games are
// paired across values.
std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values,
                            const AgentSpec& agent_a, const AgentSpec& agent_b,
                            int num_games, uint64_t seed, const MatchOptions& options);

// Contents of a --config document:
//   {"kind": "evaluate-1v6", "seed": 7, "output_dir": "out/eval",
//    "num_games": 400, "agent_a": {...}, "agent_b": "blueprint",
//    "seats": [...], "horizon": 10, "blueprint_temperature": 0.75,
//    "write_logs": false}
// Every key is optional. Paths named by "game_file" or "dataset" must exist.
struct ExperimentConfig {
  std::string kind;
  uint64_t seed = 0;
  std::string output_dir;
  int num_games = 1;
  AgentSpec agent_a;
  AgentSpec agent_b;
  std::vector<AgentSpec> seats;
  MatchOptions match;
  nlohmann::json raw;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::string& path);

// Flat tables.
std::string match_games_csv(const MatchReport& report);
std::string match_summary_csv(const MatchReport& report);
std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows);

// game_id,player_id,rank rows for the rating fit: one row per seat, player
// ids are agent names.
std::string match_outcomes_csv(const MatchReport& report);

}  // namespace rmsearch

#endif  // RMSEARCH_HARNESS_H_
