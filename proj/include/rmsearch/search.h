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

// One-ply search. Each player's candidates are its top ceil(M * units)
// blueprint actions; joint payoffs come from truncated blueprint rollouts
// scored by sum-of-squares of SC counts.

#ifndef RMSEARCH_SEARCH_H_
#define RMSEARCH_SEARCH_H_

#include <memory>
#include <string>
#include <vector>

#include "rmsearch/blueprint.h"
#include "rmsearch/grid_conquest.h"
#include "rmsearch/regret.h"
#include "rmsearch/subgame.h"

namespace rmsearch {

enum class SearchMode { kEquilibrium, kBestResponse };

std::string to_string(SearchMode mode);
SearchMode search_mode_from_string(const std::string& name);

struct SearchConfig {
  double actions_per_unit = 5.0;  // M
  int rollout_horizon = 2;        // movement phases
  RmConfig rm;
  SearchMode mode = SearchMode::kEquilibrium;
  int rollouts_per_query = 1;  // inside RM
  int br_rollouts = 64;        // per candidate in best-response mode

  void validate() const;
};

// Top ceil(M * k) actions for a player with k >= 1 units.
std::vector<ScoredAction> propose_actions(const Blueprint& bp, const GameState& state,
                                          int player, double actions_per_unit);

// Adjudicates `joint`, then lets every player follow the blueprint for
// `horizon` more movement phases. Returns the terminal value if the game
// ends, else sum-of-squares of the reached SC counts.
ScoreVector rollout_value(const GameState& state, const JointAction& joint,
                          const Blueprint& bp, int horizon, Rng& rng);

// Joint-action utilities from rollouts. Each query averages
// `rollouts_per_query` rollouts seeded from the query stream.
class RolloutOracle final : public UtilityOracle {
 public:
  RolloutOracle(GameState state, std::vector<std::vector<Action>> candidates,
                std::shared_ptr<const Blueprint> bp, int horizon, int rollouts_per_query);

  std::vector<double> evaluate(std::span<const int> joint, uint64_t stream) const override;
  bool is_deterministic() const override;
  std::string kind() const override { return "rollout"; }

  const std::vector<std::vector<Action>>& candidates() const { return candidates_; }

 private:
  GameState state_;
  std::vector<std::vector<Action>> candidates_;
  std::shared_ptr<const Blueprint> bp_;
  int horizon_;
  int rollouts_per_query_;
};

struct SearchSubgame {
  SubgameSpec spec;
  // candidates[p][a] is the order set behind subgame action a of player p.
  // A player without units has the single empty action.
  std::vector<std::vector<Action>> candidates;
};

SearchSubgame build_subgame(const GameState& state, std::shared_ptr<const Blueprint> bp,
                            const SearchConfig& config);

// Subgame over explicit candidate lists (used by tests and the sweep).
SearchSubgame build_subgame(const GameState& state, std::shared_ptr<const Blueprint> bp,
                            std::vector<std::vector<ScoredAction>> proposals,
                            const SearchConfig& config);

struct SearchDecision {
  Action action;
  int action_index = 0;
  SearchSubgame subgame;
  EquilibriumResult equilibrium;  // empty in best-response mode
  // Mean own utility per candidate in best-response mode.
  std::vector<double> candidate_values;
};

// SearchBot. In best-response mode this dispatches to best_response_act.
SearchDecision search_act(const GameState& state, int player,
                          std::shared_ptr<const Blueprint> bp, const SearchConfig& config,
                          Rng& rng);

// BRBot: the candidate with the highest mean rollout value against
// blueprint opponents; ties go to the lexicographically smaller action.
SearchDecision best_response_act(const GameState& state, int player,
                                 std::shared_ptr<const Blueprint> bp,
                                 const SearchConfig& config, Rng& rng);

// Generic forms over an arbitrary subgame.

// Runs RM and samples the player's action from the final policy.
int solve_and_sample(const SubgameSpec& spec, int player, const RmConfig& rm, Rng& rng,
                     EquilibriumResult* result = nullptr);

// Monte Carlo best response to fixed opponent policies; `rollouts` opponent
// samples, shared by every own action. Ties go to the smaller index.
int sampled_best_response(const SubgameSpec& spec, int player,
                          const std::vector<Policy>& opponent_policies, int rollouts,
                          uint64_t seed, std::vector<double>* means = nullptr);

}  // namespace rmsearch

#endif  // RMSEARCH_SEARCH_H_
