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

#ifndef RMSEARCH_EXPLOIT_H_
#define RMSEARCH_EXPLOIT_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rmsearch/regret.h"
#include "rmsearch/subgame.h"

namespace rmsearch {

struct BestResponse {
  double value = 0.0;
  int action = 0;  // smallest index among maximizers
};

// Exact best response of `player` against the other players' policies, by
// enumeration of the opponents' joint actions. The oracle must be matrix
// backed or deterministic; otherwise UnsupportedOracleError.
BestResponse best_response_value(const SubgameSpec& spec,
                                 std::span<const Policy> policies, int player);

// Expected utility of every own action against the others' policies.
std::vector<double> action_values(const SubgameSpec& spec,
                                  std::span<const Policy> policies, int player);

struct ExploitabilityReport {
  std::vector<double> best_response_values;
  std::vector<double> policy_values;
  std::vector<double> gains;
  double total = 0.0;
  bool normalized = false;  // total divided by the number of players
  bool clipped = false;     // some Monte Carlo gain was negative and zeroed
};

// Sum over players of (best-response value - policy value), optionally / N.
ExploitabilityReport exploitability(const SubgameSpec& spec,
                                    std::span<const Policy> policies,
                                    bool normalized = false);

// Tabulates the oracle into a dense game, averaging `rollouts` evaluations
// per joint action (one suffices for deterministic oracles).
MatrixGame matrixize(const SubgameSpec& spec, int rollouts, uint64_t seed);

// Exploitability of a Monte Carlo subgame: matrixize with `rollouts` per
// joint, then exact best responses. Negative gains are clipped to zero and
// flagged.
ExploitabilityReport monte_carlo_exploitability(const SubgameSpec& spec,
                                                std::span<const Policy> policies,
                                                int rollouts, uint64_t seed,
                                                bool normalized = false);

enum class PolicyKind { kFinal, kAverage };

// Per-action arithmetic mean of the chosen policies across runs.
std::vector<Policy> average_policies(std::span<const EquilibriumResult> results,
                                     PolicyKind which);

struct SeedAverageReport {
  int rows = 0;
  int cols = 0;
  int num_seeds = 0;  // per game
  int num_games = 0;
  uint64_t master_seed = 0;
  RmConfig rm;

  // Means over games. Indexing of the arrays below follows kQuantityNames.
  double avg_of_final = 0.0;
  double avg_of_avg = 0.0;
  double single_avg = 0.0;
  double single_final = 0.0;
  std::array<double, 4> std_error{};  // across games
  std::vector<std::array<double, 4>> per_game;

  static constexpr std::array<const char*, 4> kQuantityNames = {
      "avg_of_final", "avg_of_avg", "single_avg", "single_final"};
  std::array<double, 4> means() const {
    return {avg_of_final, avg_of_avg, single_avg, single_final};
  }
};

// Runs `num_seeds` independent RM solves on each of `num_games` random
// rows x cols zero-sum games and measures (unnormalized) exploitability of the
// single-run final and average policies and of their cross-seed means.
SeedAverageReport seed_average_experiment(int rows, int cols,
                                          const RmConfig& rm, int num_seeds,
                                          int num_games, uint64_t master_seed);

nlohmann::json to_json(const ExploitabilityReport& report);
nlohmann::json to_json(const SeedAverageReport& report);

}  // namespace rmsearch

#endif  // RMSEARCH_EXPLOIT_H_
