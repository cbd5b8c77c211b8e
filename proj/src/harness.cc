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

#include "rmsearch/harness.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rmsearch/errors.h"
#include "rmsearch/ratings.h"

namespace rmsearch {

namespace {

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, x);
  return buf;
}

void mean_and_se(const std::vector<double>& xs, double* mean, double* se) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  *mean = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - *mean) * (x - *mean);
  *se = xs.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
}

std::shared_ptr<const Board> make_board(const MatchOptions& options) {
  Board board = Board::standard();
  RMSEARCH_CHECK(options.horizon >= 1, "horizon must be >= 1");
  board.horizon = options.horizon;
  return std::make_shared<const Board>(std::move(board));
}

}  // namespace

std::string AgentSpec::name() const {
  switch (kind) {
    case AgentKind::kBlueprint:
      return "blueprint";
    case AgentKind::kSearchBot:
      return "searchbot";
    case AgentKind::kBrBot:
      return "brbot";
  }
  return "unknown";
}

AgentSpec agent_from_json(const nlohmann::json& doc) {
  AgentSpec agent;
  try {
    const std::string kind = doc.is_string() ? doc.get<std::string>()
                                             : doc.at("kind").get<std::string>();
    if (kind == "blueprint") {
      agent.kind = AgentKind::kBlueprint;
    } else if (kind == "searchbot") {
      agent.kind = AgentKind::kSearchBot;
    } else if (kind == "brbot") {
      agent.kind = AgentKind::kBrBot;
      agent.search.mode = SearchMode::kBestResponse;
    } else {
      throw ConfigError("unknown agent kind: " + kind);
    }
    if (doc.is_object()) {
      SearchConfig& s = agent.search;
      s.actions_per_unit = doc.value("M", s.actions_per_unit);
      s.rollout_horizon = doc.value("rollout_horizon", s.rollout_horizon);
      s.rm.iterations = doc.value("iterations", s.rm.iterations);
      s.rm.linear = doc.value("linear", s.rm.linear);
      s.rm.optimism = doc.value("optimism", s.rm.optimism);
      s.rollouts_per_query = doc.value("rollouts_per_query", s.rollouts_per_query);
      s.br_rollouts = doc.value("br_rollouts", s.br_rollouts);
    }
    agent.search.validate();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad agent spec: ") + e.what());
  } catch (const ContractError& e) {
    throw ConfigError(std::string("bad agent spec: ") + e.what());
  }
  return agent;
}

nlohmann::json to_json(const AgentSpec& agent) {
  nlohmann::json doc = {{"kind", agent.name()}};
  if (agent.kind != AgentKind::kBlueprint) {
    doc["M"] = agent.search.actions_per_unit;
    doc["rollout_horizon"] = agent.search.rollout_horizon;
    doc["iterations"] = agent.search.rm.iterations;
    doc["linear"] = agent.search.rm.linear;
    doc["optimism"] = agent.search.rm.optimism;
    doc["rollouts_per_query"] = agent.search.rollouts_per_query;
    doc["br_rollouts"] = agent.search.br_rollouts;
  }
  return doc;
}

GameRecord play_game(const std::vector<AgentSpec>& seats, const MatchOptions& options,
                     uint64_t seed, int index, std::ostream* log) {
  const auto board = make_board(options);
  RMSEARCH_CHECK(static_cast<int>(seats.size()) == board->num_players,
                 "one agent per seat");
  auto bp = std::make_shared<const HeuristicBlueprint>(options.blueprint_temperature);

  GameRecord record;
  record.index = index;
  record.seed = seed;
  std::vector<std::string> labels;
  for (size_t p = 0; p < seats.size(); ++p) {
    record.seats.push_back(seats[p].name());
    labels.push_back("P" + std::to_string(p) + "(" + seats[p].name() + ")");
  }
  GameState state = initial_state(board);
  const int n = board->num_players;
  for (int phase = 0; !state.is_terminal(); ++phase) {
    JointAction joint(n);
    std::ostringstream detail;
    for (int p = 0; p < n; ++p) {
      if (state.units_of(p).empty()) continue;
      Rng rng(mix_seed(seed, phase, p));
      if (seats[p].kind == AgentKind::kBlueprint) {
        joint[p] = bp->sample(state, p, rng);
      } else {
        const SearchDecision d = search_act(state, p, bp, seats[p].search, rng);
        joint[p] = d.action;
        if (log && seats[p].kind == AgentKind::kSearchBot) {
          detail << "-- " << labels[p] << " subgame\n"
                 << format_policies(d.equilibrium, d.subgame.spec, labels);
        }
      }
    }
    if (log) {
      *log << "== game " << index << " seed " << seed << " phase " << phase << " year "
           << state.year << " sc_counts";
      for (int c : state.sc_counts()) *log << ' ' << c;
      *log << '\n';
      for (int p = 0; p < n; ++p) {
        *log << labels[p] << ": " << action_to_string(*board, joint[p]) << '\n';
      }
      *log << detail.str();
    }
    record.states.push_back(state);
    record.joints.push_back(joint);
    state = adjudicate(state, joint);
  }
  record.final_state = state;
  record.scores = terminal_value(state);
  if (log) {
    *log << "== final year " << state.year << " scores";
    for (double v : record.scores) *log << ' ' << fmt("%.5f", v);
    *log << '\n';
  }
  return record;
}

nlohmann::json to_json(const GameRecord& record) {
  const Board& board = *record.final_state.board;
  nlohmann::json phases = nlohmann::json::array();
  for (const JointAction& joint : record.joints) {
    nlohmann::json orders = nlohmann::json::array();
    for (const Action& a : joint) orders.push_back(to_json(board, a));
    phases.push_back(orders);
  }
  return {{"index", record.index},
          {"seed", record.seed},
          {"seats", record.seats},
          {"horizon", board.horizon},
          {"phases", phases},
          {"final_state", to_json(record.final_state)},
          {"scores", record.scores}};
}

GameState replay_game(const nlohmann::json& record, std::shared_ptr<const Board> board) {
  try {
    GameState state = initial_state(board);
    for (const auto& phase : record.at("phases")) {
      JointAction joint;
      for (const auto& a : phase) joint.push_back(action_from_json(a, *board));
      state = adjudicate(state, joint);
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad game record: ") + e.what());
  }
}

MatchReport evaluate_1v6(const AgentSpec& agent_a, const AgentSpec& agent_b, int num_games,
                         uint64_t seed, const MatchOptions& options) {
  RMSEARCH_CHECK(num_games >= 1, "need at least one game");
  const int n = Board::standard().num_players;
  RMSEARCH_CHECK(n >= 2, "need two distinct seats");
  if (options.write_logs) {
    RMSEARCH_CHECK(!options.log_dir.empty(), "log directory required");
    std::filesystem::create_directories(options.log_dir);
  }
  MatchReport report;
  report.agent_a = agent_a.name();
  report.agent_b = agent_b.name();
  std::vector<double> a_scores, b_scores;
  for (int g = 0; g < num_games; ++g) {
    const int a_seat = g % n;
    std::vector<AgentSpec> seats(n, agent_b);
    seats[a_seat] = agent_a;
    const uint64_t game_seed = mix_seed(seed, g);
    GameRecord record;
    if (options.write_logs) {
      const std::string stem = options.log_dir + "/game_" + std::to_string(g);
      std::ofstream text(stem + ".log");
      record = play_game(seats, options, game_seed, g, &text);
      std::ofstream(stem + ".json") << to_json(record).dump(1) << '\n';
    } else {
      record = play_game(seats, options, game_seed, g);
    }
    report.a_seats.push_back(a_seat);
    report.seeds.push_back(game_seed);
    report.scores.push_back(record.scores);
    std::vector<char> alive(n);
    const auto units = record.final_state.unit_counts();
    const auto scs = record.final_state.sc_counts();
    for (int p = 0; p < n; ++p) alive[p] = units[p] > 0 || scs[p] > 0;
    report.survived.push_back(alive);
    a_scores.push_back(record.scores[a_seat]);
    b_scores.push_back((1.0 - record.scores[a_seat]) / (n - 1));
  }
  mean_and_se(a_scores, &report.mean_a, &report.std_error_a);
  mean_and_se(b_scores, &report.mean_b, &report.std_error_b);
  return report;
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "M") return SweepAxis::kActionsPerUnit;
  if (name == "iterations") return SweepAxis::kIterations;
  if (name == "rollout_horizon") return SweepAxis::kRolloutHorizon;
  throw ConfigError("unknown sweep axis: " + name);
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kActionsPerUnit:
      return "M";
    case SweepAxis::kIterations:
      return "iterations";
    case SweepAxis::kRolloutHorizon:
      return "rollout_horizon";
  }
  return "unknown";
}

std::vector<SweepRow> sweep(SweepAxis axis, const std::vector<double>& values,
                            const AgentSpec& agent_a, const AgentSpec& agent_b,
                            int num_games, uint64_t seed, const MatchOptions& options) {
  RMSEARCH_CHECK(!values.empty(), "sweep needs at least one value");
  std::vector<SweepRow> rows;
  for (double v : values) {
    AgentSpec a = agent_a;
    switch (axis) {
      case SweepAxis::kActionsPerUnit:
        a.search.actions_per_unit = v;
        break;
      case SweepAxis::kIterations:
        RMSEARCH_CHECK(v >= 1 && v == std::floor(v), "iterations must be a positive integer");
        a.search.rm.iterations = static_cast<int>(v);
        break;
      case SweepAxis::kRolloutHorizon:
        RMSEARCH_CHECK(v >= 0 && v == std::floor(v), "horizon must be a nonnegative integer");
        a.search.rollout_horizon = static_cast<int>(v);
        break;
    }
    a.search.validate();
    MatchOptions opts = options;
    if (opts.write_logs) opts.log_dir += "/" + to_string(axis) + "_" + fmt("%g", v);
    rows.push_back({v, evaluate_1v6(a, agent_b, num_games, seed, opts)});
  }
  return rows;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig config;
  config.raw = doc;
  try {
    config.kind = doc.value("kind", std::string());
    config.seed = doc.value("seed", uint64_t{0});
    config.output_dir = doc.value("output_dir", std::string());
    config.num_games = doc.value("num_games", 1);
    config.agent_a.kind = AgentKind::kSearchBot;
    if (doc.contains("agent_a")) config.agent_a = agent_from_json(doc["agent_a"]);
    if (doc.contains("agent_b")) config.agent_b = agent_from_json(doc["agent_b"]);
    if (doc.contains("seats")) {
      for (const auto& a : doc["seats"]) config.seats.push_back(agent_from_json(a));
    }
    config.match.horizon = doc.value("horizon", config.match.horizon);
    config.match.blueprint_temperature =
        doc.value("blueprint_temperature", config.match.blueprint_temperature);
    config.match.write_logs = doc.value("write_logs", config.match.write_logs);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  if (config.num_games < 1) throw ConfigError("num_games must be >= 1");
  if (config.match.horizon < 1) throw ConfigError("horizon must be >= 1");
  if (config.match.blueprint_temperature < 0.0) {
    throw ConfigError("blueprint_temperature must be >= 0");
  }
  for (const char* key : {"game_file", "dataset"}) {
    if (doc.contains(key) && !std::filesystem::exists(doc[key].get<std::string>())) {
      throw ConfigError(std::string(key) + " does not exist: " + doc[key].get<std::string>());
    }
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return experiment_config_from_json(doc);
}

std::string match_games_csv(const MatchReport& report) {
  std::ostringstream out;
  out << "game,seed,a_seat";
  const size_t n = report.scores.empty() ? 0 : report.scores[0].size();
  for (size_t p = 0; p < n; ++p) out << ",score_" << p;
  out << '\n';
  for (int g = 0; g < report.num_games(); ++g) {
    out << g << ',' << report.seeds[g] << ',' << report.a_seats[g];
    for (double v : report.scores[g]) out << ',' << fmt("%.6f", v);
    out << '\n';
  }
  return out.str();
}

std::string match_summary_csv(const MatchReport& report) {
  std::ostringstream out;
  out << "role,agent,games,mean_sos,std_error\n";
  out << "A," << report.agent_a << ',' << report.num_games() << ','
      << fmt("%.6f", report.mean_a) << ',' << fmt("%.6f", report.std_error_a) << '\n';
  out << "B," << report.agent_b << ',' << report.num_games() << ','
      << fmt("%.6f", report.mean_b) << ',' << fmt("%.6f", report.std_error_b) << '\n';
  return out.str();
}

std::string sweep_csv(SweepAxis axis, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "axis,value,agent,games,mean_sos,std_error\n";
  for (const auto& row : rows) {
    out << to_string(axis) << ',' << fmt("%g", row.value) << ',' << row.report.agent_a << ','
        << row.report.num_games() << ',' << fmt("%.6f", row.report.mean_a) << ','
        << fmt("%.6f", row.report.std_error_a) << '\n';
  }
  return out.str();
}

std::string match_outcomes_csv(const MatchReport& report) {
  std::ostringstream out;
  out << "game_id,player_id,rank\n";
  for (int g = 0; g < report.num_games(); ++g) {
    const auto ranks = outcome_ranks(report.scores[g], report.survived[g]);
    for (size_t p = 0; p < ranks.size(); ++p) {
      out << g << ','
          << (static_cast<int>(p) == report.a_seats[g] ? report.agent_a : report.agent_b)
          << ',' << ranks[p] << '\n';
    }
  }
  return out.str();
}

}  // namespace rmsearch
