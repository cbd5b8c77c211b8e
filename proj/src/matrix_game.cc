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

#include "rmsearch/matrix_game.h"

#include <fstream>

#include "rmsearch/errors.h"
#include "rmsearch/rng.h"

namespace rmsearch {

MatrixGame::MatrixGame(std::vector<int> action_counts,
                       const std::vector<std::vector<double>>& payoffs)
    : action_counts_(std::move(action_counts)) {
  RMSEARCH_CHECK(!action_counts_.empty(), "matrix game needs >= 1 player");
  RMSEARCH_CHECK(payoffs.size() == action_counts_.size(),
                 "one payoff array per player required");
  strides_.assign(action_counts_.size(), 1);
  num_joints_ = 1;
  for (int p = num_players() - 1; p >= 0; --p) {
    RMSEARCH_CHECK(action_counts_[p] >= 1, "every player needs >= 1 action");
    strides_[p] = num_joints_;
    num_joints_ *= static_cast<size_t>(action_counts_[p]);
  }
  table_.resize(num_joints_ * action_counts_.size());
  for (int p = 0; p < num_players(); ++p) {
    RMSEARCH_CHECK(payoffs[p].size() == num_joints_,
                   "payoff array size must equal the number of joint actions");
    for (size_t j = 0; j < num_joints_; ++j) mutable_payoff(j, p) = payoffs[p][j];
  }
}

size_t MatrixGame::joint_index(std::span<const int> joint) const {
  RMSEARCH_CHECK(joint.size() == action_counts_.size(),
                 "joint action has wrong number of players");
  size_t index = 0;
  for (size_t p = 0; p < joint.size(); ++p) {
    RMSEARCH_CHECK(joint[p] >= 0 && joint[p] < action_counts_[p],
                   "action index out of range for player " + std::to_string(p));
    index += static_cast<size_t>(joint[p]) * strides_[p];
  }
  return index;
}

std::vector<int> MatrixGame::joint_from_index(size_t index) const {
  RMSEARCH_CHECK(index < num_joints_, "joint index out of range");
  std::vector<int> joint(action_counts_.size());
  for (size_t p = 0; p < joint.size(); ++p) {
    joint[p] = static_cast<int>(index / strides_[p]);
    index %= strides_[p];
  }
  return joint;
}

std::vector<double> MatrixGame::utility(std::span<const int> joint) const {
  const size_t j = joint_index(joint);
  std::vector<double> out(action_counts_.size());
  for (int p = 0; p < num_players(); ++p) out[p] = payoff(j, p);
  return out;
}

MatrixGame random_zero_sum_game(int rows, int cols, uint64_t seed) {
  RMSEARCH_CHECK(rows >= 1 && cols >= 1, "random game needs n, m >= 1");
  Rng rng(seed);
  const size_t n = static_cast<size_t>(rows) * static_cast<size_t>(cols);
  std::vector<std::vector<double>> payoffs(2, std::vector<double>(n));
  for (size_t j = 0; j < n; ++j) {
    payoffs[0][j] = uniform01(rng);
    payoffs[1][j] = -payoffs[0][j];
  }
  return MatrixGame({rows, cols}, payoffs);
}

nlohmann::json to_json(const MatrixGame& game) {
  nlohmann::json doc;
  doc["num_players"] = game.num_players();
  doc["action_counts"] = game.action_counts();
  auto payoffs = nlohmann::json::array();
  for (int p = 0; p < game.num_players(); ++p) {
    std::vector<double> row(game.num_joints());
    for (size_t j = 0; j < row.size(); ++j) row[j] = game.payoff(j, p);
    payoffs.push_back(row);
  }
  doc["payoffs"] = std::move(payoffs);
  if (!game.action_labels.empty()) doc["action_labels"] = game.action_labels;
  return doc;
}

MatrixGame matrix_game_from_json(const nlohmann::json& doc) {
  try {
    const auto counts = doc.at("action_counts").get<std::vector<int>>();
    const int num_players = doc.at("num_players").get<int>();
    if (num_players != static_cast<int>(counts.size())) {
      throw ConfigError("num_players does not match action_counts");
    }
    MatrixGame game(counts,
                    doc.at("payoffs").get<std::vector<std::vector<double>>>());
    if (doc.contains("action_labels")) {
      game.action_labels =
          doc["action_labels"].get<std::vector<std::vector<std::string>>>();
      RMSEARCH_CHECK(game.action_labels.size() == counts.size(),
                     "action_labels needs one list per player");
      for (size_t p = 0; p < counts.size(); ++p) {
        RMSEARCH_CHECK(
            static_cast<int>(game.action_labels[p].size()) == counts[p],
            "action_labels length mismatch");
      }
    }
    return game;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed matrix game: ") + e.what());
  }
}

MatrixGame load_matrix_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix game file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
  return matrix_game_from_json(doc);
}

void save_matrix_game(const MatrixGame& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << to_json(game).dump(2) << "\n";
}

MatrixGame matching_pennies() {
  // Player 0 is the matcher.
  MatrixGame game({2, 2}, {{1, -1, -1, 1}, {-1, 1, 1, -1}});
  game.action_labels = {{"H", "T"}, {"H", "T"}};
  return game;
}

MatrixGame rock_paper_scissors() {
  MatrixGame game({3, 3}, {{0, -1, 1, 1, 0, -1, -1, 1, 0},
                           {0, 1, -1, -1, 0, 1, 1, -1, 0}});
  game.action_labels = {{"R", "P", "S"}, {"R", "P", "S"}};
  return game;
}

ScoreVector sos_scores(std::span<const int> counts) {
  double denom = 0.0;
  for (int c : counts) {
    RMSEARCH_CHECK(c >= 0, "supply-center counts must be nonnegative");
    denom += static_cast<double>(c) * c;
  }
  if (denom == 0.0) throw UndefinedScoreError("all supply-center counts are zero");
  ScoreVector scores(counts.size());
  for (size_t i = 0; i < counts.size(); ++i) {
    scores[i] = static_cast<double>(counts[i]) * counts[i] / denom;
  }
  return scores;
}

}  // namespace rmsearch
