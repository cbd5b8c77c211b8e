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

#include "rmsearch/subgame.h"

#include "rmsearch/errors.h"

namespace rmsearch {

void UtilityOracle::own_action_utilities(int player, std::span<const int> joint,
                                         uint64_t stream,
                                         std::span<double> out) const {
  std::vector<int> probe(joint.begin(), joint.end());
  for (size_t a = 0; a < out.size(); ++a) {
    probe[player] = static_cast<int>(a);
    out[a] = evaluate(probe, stream)[player];
  }
}

std::vector<double> MatrixOracle::evaluate(std::span<const int> joint,
                                           uint64_t /*stream*/) const {
  return game_->utility(joint);
}

void MatrixOracle::own_action_utilities(int player, std::span<const int> joint,
                                        uint64_t /*stream*/,
                                        std::span<double> out) const {
  const int n = game_->num_actions(player);
  RMSEARCH_CHECK(static_cast<int>(out.size()) == n, "output length mismatch");
  size_t base = 0;
  for (int p = 0; p < game_->num_players(); ++p) {
    if (p == player) continue;
    RMSEARCH_CHECK(joint[p] >= 0 && joint[p] < game_->num_actions(p),
                   "action index out of range");
    base += static_cast<size_t>(joint[p]) * game_->stride(p);
  }
  const size_t stride = game_->stride(player);
  for (int a = 0; a < n; ++a) out[a] = game_->payoff(base + a * stride, player);
}

SubgameSpec matrix_subgame(std::shared_ptr<const MatrixGame> game) {
  SubgameSpec spec;
  spec.action_counts = game->action_counts();
  spec.action_labels = game->action_labels;
  spec.oracle = std::make_shared<MatrixOracle>(std::move(game));
  return spec;
}

SubgameSpec matrix_subgame(MatrixGame game) {
  return matrix_subgame(std::make_shared<const MatrixGame>(std::move(game)));
}

size_t num_joint_actions(std::span<const int> action_counts) {
  size_t n = 1;
  for (int c : action_counts) n *= static_cast<size_t>(c);
  return n;
}

std::vector<int> decode_joint(size_t index, std::span<const int> action_counts) {
  std::vector<int> joint(action_counts.size());
  for (size_t p = action_counts.size(); p-- > 0;) {
    joint[p] = static_cast<int>(index % action_counts[p]);
    index /= action_counts[p];
  }
  return joint;
}

}  // namespace rmsearch
