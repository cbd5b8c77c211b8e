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

#include "rmsearch/exploit.h"

#include <cmath>
#include <memory>

#include "rmsearch/errors.h"
#include "rmsearch/rng.h"

namespace rmsearch {

namespace {

std::shared_ptr<const MatrixGame> exact_table(const SubgameSpec& spec) {
  RMSEARCH_CHECK(spec.oracle != nullptr, "subgame has no utility oracle");
  if (const MatrixGame* game = spec.oracle->as_matrix()) {
    // Non-owning alias; the oracle outlives this call.
    return std::shared_ptr<const MatrixGame>(spec.oracle, game);
  }
  if (!spec.oracle->is_deterministic()) {
    throw UnsupportedOracleError(
        "exact best response needs a matrix-backed or deterministic oracle; "
        "matrixize the subgame first");
  }
  return std::make_shared<MatrixGame>(matrixize(spec, 1, 0));
}

void check_policies(const SubgameSpec& spec, std::span<const Policy> policies) {
  RMSEARCH_CHECK(static_cast<int>(policies.size()) == spec.num_players(),
                 "one policy per player required");
  for (int p = 0; p < spec.num_players(); ++p) {
    RMSEARCH_CHECK(static_cast<int>(policies[p].size()) == spec.action_counts[p],
                   "policy length does not match the action count");
  }
}

std::vector<double> values_from_table(const MatrixGame& game,
                                      std::span<const Policy> policies, int player) {
  const int n = game.num_players();
  std::vector<double> values(game.num_actions(player), 0.0);
  std::vector<int> digits(n, 0);
  const size_t joints = game.num_joints();
  for (size_t j = 0; j < joints; ++j) {
    double weight = 1.0;
    for (int k = 0; k < n && weight != 0.0; ++k) {
      if (k != player) weight *= policies[k][digits[k]];
    }
    if (weight != 0.0) values[digits[player]] += weight * game.payoff(j, player);
    // Odometer increment, last player fastest (row-major).
    for (int k = n - 1; k >= 0; --k) {
      if (++digits[k] < game.num_actions(k)) break;
      digits[k] = 0;
    }
  }
  return values;
}

}  // namespace

std::vector<double> action_values(const SubgameSpec& spec,
                                  std::span<const Policy> policies, int player) {
  check_policies(spec, policies);
  RMSEARCH_CHECK(player >= 0 && player < spec.num_players(), "player out of range");
  return values_from_table(*exact_table(spec), policies, player);
}

BestResponse best_response_value(const SubgameSpec& spec,
                                 std::span<const Policy> policies, int player) {
  const auto values = action_values(spec, policies, player);
  BestResponse best{values[0], 0};
  for (size_t a = 1; a < values.size(); ++a) {
    if (values[a] > best.value) best = {values[a], static_cast<int>(a)};
  }
  return best;
}

ExploitabilityReport exploitability(const SubgameSpec& spec,
                                    std::span<const Policy> policies, bool normalized) {
  check_policies(spec, policies);
  const auto table = exact_table(spec);
  ExploitabilityReport report;
  report.normalized = normalized;
  for (int p = 0; p < spec.num_players(); ++p) {
    const auto values = values_from_table(*table, policies, p);
    double best = values[0];
    double on_policy = 0.0;
    for (size_t a = 0; a < values.size(); ++a) {
      best = std::max(best, values[a]);
      on_policy += policies[p][a] * values[a];
    }
    report.best_response_values.push_back(best);
    report.policy_values.push_back(on_policy);
    report.gains.push_back(best - on_policy);
    report.total += best - on_policy;
  }
  if (normalized) report.total /= spec.num_players();
  return report;
}

MatrixGame matrixize(const SubgameSpec& spec, int rollouts, uint64_t seed) {
  RMSEARCH_CHECK(spec.oracle != nullptr, "subgame has no utility oracle");
  RMSEARCH_CHECK(rollouts >= 1, "matrixize needs at least one rollout");
  const int n = spec.num_players();
  const size_t joints = num_joint_actions(spec.action_counts);
  const int samples = spec.oracle->is_deterministic() ? 1 : rollouts;
  std::vector<std::vector<double>> payoffs(n, std::vector<double>(joints, 0.0));
  for (size_t j = 0; j < joints; ++j) {
    const auto joint = decode_joint(j, spec.action_counts);
    for (int r = 0; r < samples; ++r) {
      const auto u = spec.oracle->evaluate(joint, mix_seed(seed, j, r));
      for (int p = 0; p < n; ++p) payoffs[p][j] += u[p] / samples;
    }
  }
  MatrixGame game(spec.action_counts, payoffs);
  game.action_labels = spec.action_labels;
  return game;
}

ExploitabilityReport monte_carlo_exploitability(const SubgameSpec& spec,
                                                std::span<const Policy> policies,
                                                int rollouts, uint64_t seed,
                                                bool normalized) {
  const SubgameSpec table = matrix_subgame(matrixize(spec, rollouts, seed));
  ExploitabilityReport report = exploitability(table, policies, false);
  report.total = 0.0;
  for (double& g : report.gains) {
    if (g < 0.0) {
      g = 0.0;
      report.clipped = true;
    }
    report.total += g;
  }
  report.normalized = normalized;
  if (normalized) report.total /= spec.num_players();
  return report;
}

std::vector<Policy> average_policies(std::span<const EquilibriumResult> results,
                                     PolicyKind which) {
  RMSEARCH_CHECK(!results.empty(), "average_policies needs at least one result");
  const auto& counts = results[0].action_counts;
  std::vector<Policy> mean(counts.size());
  for (size_t p = 0; p < counts.size(); ++p) mean[p].assign(counts[p], 0.0);
  for (const auto& r : results) {
    RMSEARCH_CHECK(r.action_counts == counts, "results have mismatched action sets");
    const auto& source = which == PolicyKind::kFinal ? r.final_policies : r.average_policies;
    for (size_t p = 0; p < counts.size(); ++p) {
      for (int a = 0; a < counts[p]; ++a) mean[p][a] += source[p][a];
    }
  }
  for (auto& policy : mean) {
    double total = 0.0;
    for (double& x : policy) {
      x /= static_cast<double>(results.size());
      total += x;
    }
    for (double& x : policy) x /= total;
  }
  return mean;
}

SeedAverageReport seed_average_experiment(int rows, int cols, const RmConfig& rm,
                                          int num_seeds, int num_games,
                                          uint64_t master_seed) {
  RMSEARCH_CHECK(num_seeds >= 1, "seed averaging needs at least one seed");
  RMSEARCH_CHECK(num_games >= 1, "seed averaging needs at least one game");
  SeedAverageReport report;
  report.rows = rows;
  report.cols = cols;
  report.num_seeds = num_seeds;
  report.num_games = num_games;
  report.master_seed = master_seed;
  report.rm = rm;

  for (int g = 0; g < num_games; ++g) {
    const SubgameSpec spec =
        matrix_subgame(random_zero_sum_game(rows, cols, mix_seed(master_seed, g)));
    std::vector<Policy> sum_final = {Policy(rows, 0.0), Policy(cols, 0.0)};
    std::vector<Policy> sum_avg = sum_final;
    double single_final = 0.0, single_avg = 0.0;
    for (int s = 0; s < num_seeds; ++s) {
      RmConfig config = rm;
      config.trace_every = 0;
      config.seed = mix_seed(master_seed, g, s + 1);
      const EquilibriumResult result = run_rm(spec, config);
      single_final += exploitability(spec, result.final_policies).total;
      single_avg += exploitability(spec, result.average_policies).total;
      for (int p = 0; p < 2; ++p) {
        for (size_t a = 0; a < sum_final[p].size(); ++a) {
          sum_final[p][a] += result.final_policies[p][a];
          sum_avg[p][a] += result.average_policies[p][a];
        }
      }
    }
    for (auto* sums : {&sum_final, &sum_avg}) {
      for (auto& policy : *sums) {
        for (double& x : policy) x /= num_seeds;
      }
    }
    report.per_game.push_back({exploitability(spec, sum_final).total,
                               exploitability(spec, sum_avg).total,
                               single_avg / num_seeds, single_final / num_seeds});
  }

  std::array<double, 4> mean{}, sq{};
  for (const auto& row : report.per_game) {
    for (int q = 0; q < 4; ++q) mean[q] += row[q];
  }
  for (double& m : mean) m /= num_games;
  for (const auto& row : report.per_game) {
    for (int q = 0; q < 4; ++q) sq[q] += (row[q] - mean[q]) * (row[q] - mean[q]);
  }
  for (int q = 0; q < 4; ++q) {
    report.std_error[q] =
        num_games > 1 ? std::sqrt(sq[q] / (num_games - 1) / num_games) : 0.0;
  }
  report.avg_of_final = mean[0];
  report.avg_of_avg = mean[1];
  report.single_avg = mean[2];
  report.single_final = mean[3];
  return report;
}

nlohmann::json to_json(const ExploitabilityReport& report) {
  return {{"best_response_values", report.best_response_values},
          {"policy_values", report.policy_values},
          {"gains", report.gains},
          {"total", report.total},
          {"normalized", report.normalized},
          {"clipped", report.clipped}};
}

nlohmann::json to_json(const SeedAverageReport& report) {
  nlohmann::json doc = {{"rows", report.rows},
                        {"cols", report.cols},
                        {"seeds_per_game", report.num_seeds},
                        {"games", report.num_games},
                        {"master_seed", report.master_seed},
                        {"iterations", report.rm.iterations},
                        {"linear", report.rm.linear},
                        {"optimism", report.rm.optimism}};
  const auto means = report.means();
  for (int q = 0; q < 4; ++q) {
    doc[SeedAverageReport::kQuantityNames[q]] = {{"mean", means[q]},
                                                 {"std_error", report.std_error[q]}};
  }
  return doc;
}

}  // namespace rmsearch
