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

#ifndef RMSEARCH_SUBGAME_H_
#define RMSEARCH_SUBGAME_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rmsearch/matrix_game.h"

namespace rmsearch {

// Probability vector over one player's subgame actions.
using Policy = std::vector<double>;

// Payoff source for a one-shot subgame. Implementations must be safe to call
// concurrently; any internal sampling is driven by the `stream` argument so
// results do not depend on call order.
class UtilityOracle {
 public:
  virtual ~UtilityOracle() = default;

  virtual std::vector<double> evaluate(std::span<const int> joint,
                                       uint64_t stream) const = 0;

  // out[a] = v_player(a, joint_{-player}) for every own action a. The entry
  // joint[player] is ignored. Every own action shares `stream` so Monte Carlo
  // oracles compare actions under common random numbers.
  virtual void own_action_utilities(int player, std::span<const int> joint,
                                    uint64_t stream, std::span<double> out) const;

  // Dense table if the oracle is matrix-backed, nullptr otherwise.
  virtual const MatrixGame* as_matrix() const { return nullptr; }

  // True when evaluate() ignores `stream` (enumeration gives exact values).
  virtual bool is_deterministic() const { return false; }

  virtual std::string kind() const = 0;
};

class MatrixOracle final : public UtilityOracle {
 public:
  explicit MatrixOracle(std::shared_ptr<const MatrixGame> game)
      : game_(std::move(game)) {}

  std::vector<double> evaluate(std::span<const int> joint,
                               uint64_t stream) const override;
  void own_action_utilities(int player, std::span<const int> joint,
                            uint64_t stream, std::span<double> out) const override;
  const MatrixGame* as_matrix() const override { return game_.get(); }
  bool is_deterministic() const override { return true; }
  std::string kind() const override { return "matrix"; }

 private:
  std::shared_ptr<const MatrixGame> game_;
};

struct SubgameSpec {
  std::vector<int> action_counts;
  std::shared_ptr<const UtilityOracle> oracle;
  // Optional display data: per-player action labels and blueprint
  // probabilities (the bp_p column of the policy printout).
  std::vector<std::vector<std::string>> action_labels;
  std::vector<std::vector<double>> blueprint_probs;

  int num_players() const { return static_cast<int>(action_counts.size()); }
};

SubgameSpec matrix_subgame(std::shared_ptr<const MatrixGame> game);
SubgameSpec matrix_subgame(MatrixGame game);

// Row-major (player 0 most significant) enumeration helpers.
size_t num_joint_actions(std::span<const int> action_counts);
std::vector<int> decode_joint(size_t index, std::span<const int> action_counts);

}  // namespace rmsearch

#endif  // RMSEARCH_SUBGAME_H_
