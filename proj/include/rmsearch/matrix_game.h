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

#ifndef RMSEARCH_MATRIX_GAME_H_
#define RMSEARCH_MATRIX_GAME_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace rmsearch {

using ScoreVector = std::vector<double>;

// Explicit normal-form game. Joint actions are flattened row-major with
// player 0 as the most significant digit, so for two players the joint
// (r, c) lives at r * cols + c.
class MatrixGame {
 public:
  MatrixGame() = default;

  // `payoffs[p]` is player p's row-major payoff array over all joints.
  MatrixGame(std::vector<int> action_counts,
             const std::vector<std::vector<double>>& payoffs);

  int num_players() const { return static_cast<int>(action_counts_.size()); }
  const std::vector<int>& action_counts() const { return action_counts_; }
  int num_actions(int player) const { return action_counts_.at(player); }
  size_t num_joints() const { return num_joints_; }

  size_t joint_index(std::span<const int> joint) const;
  std::vector<int> joint_from_index(size_t index) const;

  // Stride of `player`'s digit in the flattened joint index.
  size_t stride(int player) const { return strides_[player]; }

  double payoff(size_t joint, int player) const {
    return table_[joint * action_counts_.size() + player];
  }
  double& mutable_payoff(size_t joint, int player) {
    return table_[joint * action_counts_.size() + player];
  }

  // Payoff vector for a joint action. Throws ContractError on a bad index.
  std::vector<double> utility(std::span<const int> joint) const;

  // Optional human-readable labels, one list per player (may be empty).
  std::vector<std::vector<std::string>> action_labels;

 private:
  std::vector<int> action_counts_;
  std::vector<size_t> strides_;
  size_t num_joints_ = 0;
  std::vector<double> table_;  // joint-major, player-minor
};

// Two-player zero-sum game with player-0 payoffs i.i.d. uniform in [0, 1)
// and player-1 payoffs their exact negation.
MatrixGame random_zero_sum_game(int rows, int cols, uint64_t seed);

// Matrix game file: {"num_players", "action_counts", "payoffs": [[...], ...],
// optional "action_labels"}; payoff arrays are row-major per player.
nlohmann::json to_json(const MatrixGame& game);
MatrixGame matrix_game_from_json(const nlohmann::json& doc);
MatrixGame load_matrix_game(const std::string& path);
void save_matrix_game(const MatrixGame& game, const std::string& path);

// Fixtures used throughout the tests and the CLI examples.
MatrixGame matching_pennies();
MatrixGame rock_paper_scissors();

// score_i = C_i^2 / sum_j C_j^2.
ScoreVector sos_scores(std::span<const int> counts);

}  // namespace rmsearch

#endif  // RMSEARCH_MATRIX_GAME_H_
