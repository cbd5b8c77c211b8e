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

#include "rmsearch/regret.h"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <optional>

#include "rmsearch/errors.h"
#include "rmsearch/exploit.h"

namespace rmsearch {

RegretState::RegretState(std::span<const int> action_counts, bool linear,
                         bool optimism)
    : linear(linear), optimism(optimism) {
  for (int n : action_counts) {
    RMSEARCH_CHECK(n >= 1, "every player needs at least one action");
    PlayerRegrets p;
    p.regrets.assign(n, 0.0);
    p.avg_policy_weights.assign(n, 0.0);
    p.last_instant_regret.assign(n, 0.0);
    players.push_back(std::move(p));
  }
}

Policy policy_from_regrets(std::span<const double> regrets) {
  RMSEARCH_CHECK(!regrets.empty(), "policy_from_regrets needs a nonempty vector");
  Policy policy(regrets.size());
  double total = 0.0;
  for (size_t a = 0; a < regrets.size(); ++a) {
    policy[a] = std::max(0.0, regrets[a]);
    total += policy[a];
  }
  if (total > 0.0) {
    for (double& p : policy) p /= total;
  } else {
    std::fill(policy.begin(), policy.end(), 1.0 / static_cast<double>(regrets.size()));
  }
  return policy;
}

Policy acting_policy(const RegretState& state, int player) {
  const PlayerRegrets& p = state.players.at(player);
  if (!state.optimism) return policy_from_regrets(p.regrets);
  std::vector<double> boosted(p.regrets.size());
  for (size_t a = 0; a < boosted.size(); ++a) {
    boosted[a] = p.regrets[a] + p.last_instant_regret[a];
  }
  return policy_from_regrets(boosted);
}

Policy average_policy(const RegretState& state, int player) {
  const auto& w = state.players.at(player).avg_policy_weights;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (total <= 0.0) return Policy(w.size(), 1.0 / static_cast<double>(w.size()));
  Policy policy(w.size());
  for (size_t a = 0; a < w.size(); ++a) policy[a] = w[a] / total;
  return policy;
}

void rm_update(RegretState& state, int player, std::span<const double> utilities) {
  PlayerRegrets& p = state.players.at(player);
  RMSEARCH_CHECK(utilities.size() == p.regrets.size(),
                 "utility vector length does not match the action count");
  const Policy policy = acting_policy(state, player);
  double expected = 0.0;
  for (size_t a = 0; a < policy.size(); ++a) expected += policy[a] * utilities[a];

  if (state.linear) {
    const double t = static_cast<double>(p.iteration);
    const double discount = t / (t + 1.0);
    for (double& r : p.regrets) r *= discount;
    for (double& w : p.avg_policy_weights) w *= discount;
  }
  for (size_t a = 0; a < policy.size(); ++a) {
    const double instant = utilities[a] - expected;
    p.regrets[a] += instant;
    p.last_instant_regret[a] = instant;
    p.avg_policy_weights[a] += policy[a];
  }
  ++p.iteration;
}

EquilibriumResult run_rm(const SubgameSpec& spec, const RmConfig& config) {
  RMSEARCH_CHECK(config.iterations >= 1, "RM needs at least one iteration");
  RMSEARCH_CHECK(spec.oracle != nullptr, "subgame has no utility oracle");
  const int num_players = spec.num_players();
  RegretState state(spec.action_counts, config.linear, config.optimism);

  EquilibriumResult result;
  result.action_counts = spec.action_counts;
  result.iterations = config.iterations;
  result.action_utilities.resize(num_players);
  result.expected_utilities.assign(num_players, 0.0);
  for (int p = 0; p < num_players; ++p) {
    result.action_utilities[p].assign(spec.action_counts[p], 0.0);
  }

  // Monte Carlo oracles are tabulated once, lazily, for the trace.
  std::optional<SubgameSpec> trace_spec;
  auto record_trace = [&](int iteration) {
    if (!trace_spec) {
      if (spec.oracle->as_matrix() || spec.oracle->is_deterministic()) {
        trace_spec = spec;
        result.trace_oracle = spec.oracle->kind();
      } else {
        trace_spec = matrix_subgame(
            matrixize(spec, config.trace_rollouts, mix_seed(config.seed, 0x7ace)));
        result.trace_oracle = spec.oracle->kind() + "-matrixized-" +
                              std::to_string(config.trace_rollouts);
      }
    }
    std::vector<Policy> avg(num_players);
    for (int p = 0; p < num_players; ++p) avg[p] = average_policy(state, p);
    result.trace.push_back({iteration, exploitability(*trace_spec, avg).total});
  };

  Rng rng(config.seed);
  std::vector<Policy> policies(num_players);
  std::vector<int> sampled(num_players);
  std::vector<std::vector<double>> utilities(num_players);
  for (int p = 0; p < num_players; ++p) utilities[p].resize(spec.action_counts[p]);

  for (int t = 0; t < config.iterations; ++t) {
    for (int p = 0; p < num_players; ++p) {
      policies[p] = acting_policy(state, p);
      sampled[p] = sample_index(policies[p], rng);
    }
    for (int p = 0; p < num_players; ++p) {
      spec.oracle->own_action_utilities(p, sampled, mix_seed(config.seed, t, p),
                                        utilities[p]);
    }
    const double inv = 1.0 / (t + 1.0);
    for (int p = 0; p < num_players; ++p) {
      double expected = 0.0;
      auto& means = result.action_utilities[p];
      for (size_t a = 0; a < means.size(); ++a) {
        means[a] += (utilities[p][a] - means[a]) * inv;
        expected += policies[p][a] * utilities[p][a];
      }
      result.expected_utilities[p] += (expected - result.expected_utilities[p]) * inv;
      rm_update(state, p, utilities[p]);
    }
    const int done = t + 1;
    if (config.trace_every > 0 &&
        (done == 1 || done % config.trace_every == 0 || done == config.iterations)) {
      record_trace(done);
    }
  }

  for (int p = 0; p < num_players; ++p) {
    result.final_policies.push_back(acting_policy(state, p));
    result.average_policies.push_back(average_policy(state, p));
  }
  return result;
}

int sample_final_action(const EquilibriumResult& result, int player, Rng& rng) {
  RMSEARCH_CHECK(player >= 0 && player < static_cast<int>(result.final_policies.size()),
                 "no final policy for player");
  return sample_index(result.final_policies[player], rng);
}

nlohmann::json to_json(const EquilibriumResult& result, const SubgameSpec& spec) {
  nlohmann::json doc;
  doc["iterations"] = result.iterations;
  auto players = nlohmann::json::array();
  for (size_t p = 0; p < result.final_policies.size(); ++p) {
    nlohmann::json entry;
    if (p < spec.action_labels.size()) entry["action_labels"] = spec.action_labels[p];
    entry["final_policy"] = result.final_policies[p];
    entry["average_policy"] = result.average_policies[p];
    entry["action_utilities"] = result.action_utilities[p];
    entry["expected_utility"] = result.expected_utilities[p];
    players.push_back(std::move(entry));
  }
  doc["players"] = std::move(players);
  if (!result.trace.empty()) {
    doc["trace_oracle"] = result.trace_oracle;
    auto rows = nlohmann::json::array();
    for (const auto& row : result.trace) rows.push_back({row.iteration, row.exploitability});
    doc["trace"] = std::move(rows);
  }
  return doc;
}

std::string format_policies(const EquilibriumResult& result,
                            const SubgameSpec& spec,
                            const std::vector<std::string>& player_names) {
  std::string out;
  char line[256];
  for (size_t p = 0; p < result.final_policies.size(); ++p) {
    const std::string name =
        p < player_names.size() ? player_names[p] : "PLAYER" + std::to_string(p);
    std::snprintf(line, sizeof(line), "%s avg_utility=%.5f\n", name.c_str(),
                  result.expected_utilities[p]);
    out += line;
    out += "  probs     bp_p      avg_u      orders\n";
    const Policy& probs = result.final_policies[p];
    std::vector<int> order(probs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return probs[a] > probs[b]; });
    for (int a : order) {
      const double bp = p < spec.blueprint_probs.size() ? spec.blueprint_probs[p][a] : 0.0;
      const std::string label = p < spec.action_labels.size() && !spec.action_labels[p].empty()
                                    ? spec.action_labels[p][a]
                                    : std::to_string(a);
      std::snprintf(line, sizeof(line), "  %.5f   %.5f   %.5f  ", probs[a], bp,
                    result.action_utilities[p][a]);
      out += line;
      out += label + "\n";
    }
  }
  return out;
}

}  // namespace rmsearch
