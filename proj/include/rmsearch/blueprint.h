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

#ifndef RMSEARCH_BLUEPRINT_H_
#define RMSEARCH_BLUEPRINT_H_

#include <utility>
#include <vector>

#include "rmsearch/grid_conquest.h"
#include "rmsearch/rng.h"

namespace rmsearch {

struct ScoredAction {
  Action action;
  double prob = 0.0;
};

// A fixed policy used to propose subgame actions and to drive rollouts.
// Implementations must be safe to call concurrently.
class Blueprint {
 public:
  virtual ~Blueprint() = default;

  // Up to `limit` distinct actions with the highest blueprint probability,
  // sorted by (probability desc, action asc).
  virtual std::vector<ScoredAction> top_actions(const GameState& state, int player,
                                                size_t limit) const = 0;

  // Draws an action at the rollout temperature.
  virtual Action sample(const GameState& state, int player, Rng& rng) const = 0;

  // Rollout temperature; 0 means greedy.
  virtual double temperature() const = 0;
};

struct BlueprintWeights {
  double approach = 1.0;
  double enter_sc = 0.5;
  double support_friend = 0.3;
};

// Factorized softmax over handcrafted per-unit order features:
//   +approach per step of distance gained toward the nearest SC the player
//            does not own,
//   +enter_sc for moving onto a supply center,
//   +support_friend for supporting a move by one of the player's own units,
// and 0 for holds and all other supports. An action's probability is the
// product of its units' order probabilities.
class HeuristicBlueprint final : public Blueprint {
 public:
  explicit HeuristicBlueprint(double temperature = 0.75, BlueprintWeights weights = {},
                              int beam_factor = 4);

  std::vector<ScoredAction> top_actions(const GameState& state, int player,
                                        size_t limit) const override;
  Action sample(const GameState& state, int player, Rng& rng) const override;
  double temperature() const override { return temperature_; }

  // Legal orders of the unit at `province` with their probabilities at the
  // given temperature (1.0 is the blueprint's own distribution).
  std::vector<std::pair<UnitOrder, double>> unit_distribution(
      const GameState& state, int province, double temperature) const;

  // Product of per-unit probabilities at temperature 1.
  double probability(const GameState& state, int player, const Action& action) const;

 private:
  std::vector<double> order_logits(const GameState& state, int province,
                                   const std::vector<UnitOrder>& orders,
                                   const std::vector<int>& target_distance) const;
  std::vector<int> target_distance(const GameState& state, int player) const;

  double temperature_;
  BlueprintWeights weights_;
  int beam_factor_;
};

}  // namespace rmsearch

#endif  // RMSEARCH_BLUEPRINT_H_
