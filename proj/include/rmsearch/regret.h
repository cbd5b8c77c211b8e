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

// Sampled regret matching. Each iteration every player samples one action
// from its current policy; each player then scores all of its own actions
// against the sampled opponents and moves its regrets by the difference from
// the policy-weighted mean. Per-iteration cost is sum_i |A_i| oracle values
// rather than prod_i |A_i|.
//
// Variants:
//  - linear: iteration t's contribution weighs t. Implemented by discounting
//    the accumulated regrets and average-policy weights by t / (t + 1) before
//    each update.
//  - optimism: the acting policy is formed from regrets plus the most recent
//    instantaneous regret, so the latest iteration counts twice.

#ifndef RMSEARCH_REGRET_H_
#define RMSEARCH_REGRET_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rmsearch/rng.h"
#include "rmsearch/subgame.h"

namespace rmsearch {

struct RmConfig {
  int iterations = 256;
  bool linear = true;
  bool optimism = true;
  uint64_t seed = 0;
  // Record average-policy exploitability at iteration 1, every `trace_every`
  // iterations and at the last one. 0 disables the trace.
  int trace_every = 0;
  // Rollouts per joint action when a Monte Carlo oracle has to be tabulated
  // for the trace.
  int trace_rollouts = 64;
};

struct PlayerRegrets {
  std::vector<double> regrets;
  std::vector<double> avg_policy_weights;
  std::vector<double> last_instant_regret;
  int iteration = 0;
};

struct RegretState {
  std::vector<PlayerRegrets> players;
  bool linear = true;
  bool optimism = true;

  RegretState(std::span<const int> action_counts, bool linear, bool optimism);
};

// Positive-part normalization of the regrets; uniform if none is positive.
Policy policy_from_regrets(std::span<const double> regrets);

// Policy the player acts with on the next iteration.
Policy acting_policy(const RegretState& state, int player);

// Normalized average-policy weights (uniform before the first update).
Policy average_policy(const RegretState& state, int player);

// Applies one sampled update for `player`. utilities[a] must hold
// v_player(a, a*_{-player}) for every own action a.
void rm_update(RegretState& state, int player, std::span<const double> utilities);

struct TraceRow {
  int iteration = 0;
  double exploitability = 0.0;
};

struct EquilibriumResult {
  std::vector<int> action_counts;
  std::vector<Policy> final_policies;
  std::vector<Policy> average_policies;
  // Mean sampled utility of each action and of the acting policy.
  std::vector<std::vector<double>> action_utilities;
  std::vector<double> expected_utilities;
  std::vector<TraceRow> trace;
  std::string trace_oracle;  // oracle kind the trace was computed with
  int iterations = 0;
};

EquilibriumResult run_rm(const SubgameSpec& spec, const RmConfig& config);

// Draws the action to play from the final iteration's policy.
int sample_final_action(const EquilibriumResult& result, int player, Rng& rng);

nlohmann::json to_json(const EquilibriumResult& result, const SubgameSpec& spec);

// Fixed-width policy listing, one block per player, rows sorted by final
// probability:
//   <name> avg_utility=0.15622
//     probs     bp_p      avg_u      orders
//     0.53648   0.13268   0.15697  <label>
std::string format_policies(const EquilibriumResult& result,
                            const SubgameSpec& spec,
                            const std::vector<std::string>& player_names = {});

}  // namespace rmsearch

#endif  // RMSEARCH_REGRET_H_
