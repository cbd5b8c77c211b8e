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

#include "rmsearch/search.h"

#include <cmath>

#include "rmsearch/errors.h"

namespace rmsearch {

std::string to_string(SearchMode mode) {
  return mode == SearchMode::kEquilibrium ? "equilibrium" : "best-response";
}

SearchMode search_mode_from_string(const std::string& name) {
  if (name == "equilibrium" || name == "searchbot") return SearchMode::kEquilibrium;
  if (name == "best-response" || name == "brbot") return SearchMode::kBestResponse;
  throw ConfigError("unknown search mode: " + name);
}

void SearchConfig::validate() const {
  RMSEARCH_CHECK(actions_per_unit > 0.0, "M must be positive");
  RMSEARCH_CHECK(rollout_horizon >= 0, "rollout horizon must be >= 0");
  RMSEARCH_CHECK(rm.iterations >= 1, "RM needs at least one iteration");
  RMSEARCH_CHECK(rollouts_per_query >= 1, "rollouts per query must be >= 1");
  RMSEARCH_CHECK(br_rollouts >= 1, "best-response rollouts must be >= 1");
}

std::vector<ScoredAction> propose_actions(const Blueprint& bp, const GameState& state,
                                          int player, double actions_per_unit) {
  RMSEARCH_CHECK(actions_per_unit > 0.0, "M must be positive");
  const size_t units = state.units_of(player).size();
  RMSEARCH_CHECK(units > 0, "player " + std::to_string(player) + " has no units");
  const auto limit = static_cast<size_t>(std::ceil(actions_per_unit * units));
  return bp.top_actions(state, player, limit);
}

ScoreVector rollout_value(const GameState& state, const JointAction& joint,
                          const Blueprint& bp, int horizon, Rng& rng) {
  RMSEARCH_CHECK(horizon >= 0, "rollout horizon must be >= 0");
  GameState s = adjudicate(state, joint);
  JointAction sampled(s.num_players());
  for (int step = 0; step < horizon && !s.is_terminal(); ++step) {
    for (int p = 0; p < s.num_players(); ++p) sampled[p] = bp.sample(s, p, rng);
    s = adjudicate(s, sampled);
  }
  if (s.is_terminal()) return terminal_value(s);
  return sos_scores(s.sc_counts());
}

RolloutOracle::RolloutOracle(GameState state, std::vector<std::vector<Action>> candidates,
                             std::shared_ptr<const Blueprint> bp, int horizon,
                             int rollouts_per_query)
    : state_(std::move(state)),
      candidates_(std::move(candidates)),
      bp_(std::move(bp)),
      horizon_(horizon),
      rollouts_per_query_(rollouts_per_query) {
  RMSEARCH_CHECK(bp_ != nullptr, "rollout oracle needs a blueprint");
  RMSEARCH_CHECK(static_cast<int>(candidates_.size()) == state_.num_players(),
                 "one candidate list per player");
  for (const auto& list : candidates_) {
    RMSEARCH_CHECK(!list.empty(), "candidate lists must be nonempty");
  }
  RMSEARCH_CHECK(rollouts_per_query_ >= 1, "rollouts per query must be >= 1");
}

std::vector<double> RolloutOracle::evaluate(std::span<const int> joint,
                                            uint64_t stream) const {
  const int n = state_.num_players();
  RMSEARCH_CHECK(static_cast<int>(joint.size()) == n, "joint action size mismatch");
  JointAction orders(n);
  for (int p = 0; p < n; ++p) orders[p] = candidates_[p].at(joint[p]);
  Rng rng(stream);
  std::vector<double> total(n, 0.0);
  for (int r = 0; r < rollouts_per_query_; ++r) {
    const auto v = rollout_value(state_, orders, *bp_, horizon_, rng);
    for (int p = 0; p < n; ++p) total[p] += v[p];
  }
  for (double& x : total) x /= rollouts_per_query_;
  return total;
}

bool RolloutOracle::is_deterministic() const {
  return horizon_ == 0 || bp_->temperature() == 0.0;
}

SearchSubgame build_subgame(const GameState& state, std::shared_ptr<const Blueprint> bp,
                            const SearchConfig& config) {
  std::vector<std::vector<ScoredAction>> proposals(state.num_players());
  for (int p = 0; p < state.num_players(); ++p) {
    if (!state.units_of(p).empty()) {
      proposals[p] = propose_actions(*bp, state, p, config.actions_per_unit);
    }
  }
  return build_subgame(state, std::move(bp), std::move(proposals), config);
}

SearchSubgame build_subgame(const GameState& state, std::shared_ptr<const Blueprint> bp,
                            std::vector<std::vector<ScoredAction>> proposals,
                            const SearchConfig& config) {
  config.validate();
  const int n = state.num_players();
  RMSEARCH_CHECK(static_cast<int>(proposals.size()) == n, "one proposal list per player");
  SearchSubgame out;
  out.candidates.resize(n);
  out.spec.action_labels.resize(n);
  out.spec.blueprint_probs.resize(n);
  for (int p = 0; p < n; ++p) {
    if (proposals[p].empty()) {
      RMSEARCH_CHECK(state.units_of(p).empty(), "empty proposal list for a live player");
      proposals[p].push_back({Action{}, 1.0});
    }
    for (const ScoredAction& sa : proposals[p]) {
      out.candidates[p].push_back(sa.action);
      out.spec.action_labels[p].push_back(action_to_string(*state.board, sa.action));
      out.spec.blueprint_probs[p].push_back(sa.prob);
    }
    out.spec.action_counts.push_back(static_cast<int>(out.candidates[p].size()));
  }
  out.spec.oracle = std::make_shared<RolloutOracle>(
      state, out.candidates, std::move(bp), config.rollout_horizon, config.rollouts_per_query);
  return out;
}

int solve_and_sample(const SubgameSpec& spec, int player, const RmConfig& rm, Rng& rng,
                     EquilibriumResult* result) {
  EquilibriumResult eq = run_rm(spec, rm);
  const int action = sample_final_action(eq, player, rng);
  if (result) *result = std::move(eq);
  return action;
}

SearchDecision search_act(const GameState& state, int player,
                          std::shared_ptr<const Blueprint> bp, const SearchConfig& config,
                          Rng& rng) {
  if (config.mode == SearchMode::kBestResponse) {
    return best_response_act(state, player, std::move(bp), config, rng);
  }
  RMSEARCH_CHECK(!state.units_of(player).empty(), "agent controls no units");
  SearchDecision decision;
  decision.subgame = build_subgame(state, std::move(bp), config);
  RmConfig rm = config.rm;
  rm.seed = rng();
  decision.action_index =
      solve_and_sample(decision.subgame.spec, player, rm, rng, &decision.equilibrium);
  decision.action = decision.subgame.candidates[player][decision.action_index];
  return decision;
}

SearchDecision best_response_act(const GameState& state, int player,
                                 std::shared_ptr<const Blueprint> bp,
                                 const SearchConfig& config, Rng& rng) {
  config.validate();
  RMSEARCH_CHECK(!state.units_of(player).empty(), "agent controls no units");
  const int n = state.num_players();
  SearchDecision decision;
  std::vector<std::vector<ScoredAction>> proposals(n);
  proposals[player] = propose_actions(*bp, state, player, config.actions_per_unit);
  for (int p = 0; p < n; ++p) {
    if (p != player && !state.units_of(p).empty()) {
      proposals[p] = {ScoredAction{bp->top_actions(state, p, 1).front().action, 1.0}};
    }
  }
  decision.subgame = build_subgame(state, bp, std::move(proposals), config);
  const auto& candidates = decision.subgame.candidates[player];

  const uint64_t seed = rng();
  std::vector<double>& means = decision.candidate_values;
  means.assign(candidates.size(), 0.0);
  JointAction joint(n);
  for (int r = 0; r < config.br_rollouts; ++r) {
    Rng opponents(mix_seed(seed, r));
    for (int p = 0; p < n; ++p) {
      if (p != player) joint[p] = bp->sample(state, p, opponents);
    }
    for (size_t c = 0; c < candidates.size(); ++c) {
      joint[player] = candidates[c];
      Rng roll(mix_seed(seed, r, 1));
      means[c] += rollout_value(state, joint, *bp, config.rollout_horizon, roll)[player];
    }
  }
  size_t best = 0;
  for (size_t c = 0; c < candidates.size(); ++c) {
    means[c] /= config.br_rollouts;
    if (means[c] > means[best] ||
        (means[c] == means[best] && candidates[c] < candidates[best])) {
      best = c;
    }
  }
  decision.action_index = static_cast<int>(best);
  decision.action = candidates[best];
  return decision;
}

int sampled_best_response(const SubgameSpec& spec, int player,
                          const std::vector<Policy>& opponent_policies, int rollouts,
                          uint64_t seed, std::vector<double>* means_out) {
  const int n = spec.num_players();
  RMSEARCH_CHECK(static_cast<int>(opponent_policies.size()) == n,
                 "one policy per player (the player's own entry is ignored)");
  RMSEARCH_CHECK(rollouts >= 1, "need at least one rollout");
  const int own = spec.action_counts[player];
  std::vector<double> means(own, 0.0), values(own);
  std::vector<int> joint(n, 0);
  for (int r = 0; r < rollouts; ++r) {
    Rng rng(mix_seed(seed, r));
    for (int p = 0; p < n; ++p) {
      if (p != player) joint[p] = sample_index(opponent_policies[p], rng);
    }
    spec.oracle->own_action_utilities(player, joint, mix_seed(seed, r, 1), values);
    for (int a = 0; a < own; ++a) means[a] += values[a];
  }
  int best = 0;
  for (int a = 0; a < own; ++a) {
    means[a] /= rollouts;
    if (means[a] > means[best]) best = a;
  }
  if (means_out) *means_out = std::move(means);
  return best;
}

}  // namespace rmsearch
