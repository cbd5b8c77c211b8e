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

#include "rmsearch/blueprint.h"

#include <algorithm>
#include <cmath>

#include "rmsearch/errors.h"

namespace rmsearch {

namespace {

// Softmax of logits / temperature; temperature 0 puts all mass on the first
// maximal logit.
std::vector<double> softmax(const std::vector<double>& logits, double temperature) {
  std::vector<double> probs(logits.size(), 0.0);
  const double top = *std::max_element(logits.begin(), logits.end());
  if (temperature <= 0.0) {
    probs[std::max_element(logits.begin(), logits.end()) - logits.begin()] = 1.0;
    return probs;
  }
  double total = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp((logits[i] - top) / temperature);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

struct Partial {
  Action action;
  double log_prob = 0.0;
};

bool better(const Partial& a, const Partial& b) {
  if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
  return a.action < b.action;
}

}  // namespace

HeuristicBlueprint::HeuristicBlueprint(double temperature, BlueprintWeights weights,
                                       int beam_factor)
    : temperature_(temperature), weights_(weights), beam_factor_(beam_factor) {
  RMSEARCH_CHECK(temperature >= 0.0, "blueprint temperature must be >= 0");
  RMSEARCH_CHECK(beam_factor >= 1, "beam factor must be >= 1");
}

std::vector<int> HeuristicBlueprint::target_distance(const GameState& state,
                                                     int player) const {
  const Board& board = *state.board;
  std::vector<int> dist(board.num_provinces, 0);
  bool any_target = false;
  for (int sc = 0; sc < board.num_provinces; ++sc) {
    any_target |= board.is_sc[sc] && state.owner[sc] != player;
  }
  if (!any_target) return dist;
  for (int p = 0; p < board.num_provinces; ++p) {
    int best = board.num_provinces;
    for (int sc = 0; sc < board.num_provinces; ++sc) {
      if (board.is_sc[sc] && state.owner[sc] != player) {
        best = std::min(best, board.distance[p][sc]);
      }
    }
    dist[p] = best;
  }
  return dist;
}

std::vector<double> HeuristicBlueprint::order_logits(
    const GameState& state, int province, const std::vector<UnitOrder>& orders,
    const std::vector<int>& target_distance) const {
  const Board& board = *state.board;
  const int player = state.unit[province];
  std::vector<double> logits(orders.size(), 0.0);
  for (size_t i = 0; i < orders.size(); ++i) {
    const UnitOrder& o = orders[i];
    if (o.kind == OrderKind::kMove) {
      logits[i] = weights_.approach * (target_distance[o.source] - target_distance[o.target]);
      if (board.is_sc[o.target]) logits[i] += weights_.enter_sc;
    } else if (o.kind == OrderKind::kSupportMove && state.unit[o.supported_source] == player) {
      logits[i] = weights_.support_friend;
    }
  }
  return logits;
}

std::vector<std::pair<UnitOrder, double>> HeuristicBlueprint::unit_distribution(
    const GameState& state, int province, double temperature) const {
  const auto orders = legal_orders(state, province);
  const auto probs = softmax(
      order_logits(state, province, orders, target_distance(state, state.unit[province])),
      temperature);
  std::vector<std::pair<UnitOrder, double>> out;
  out.reserve(orders.size());
  for (size_t i = 0; i < orders.size(); ++i) out.emplace_back(orders[i], probs[i]);
  return out;
}

double HeuristicBlueprint::probability(const GameState& state, int player,
                                       const Action& action) const {
  const auto units = state.units_of(player);
  RMSEARCH_CHECK(action.size() == units.size(), "action does not cover the player's units");
  double prob = 1.0;
  for (const UnitOrder& o : action) {
    double p = 0.0;
    for (const auto& [order, q] : unit_distribution(state, o.source, 1.0)) {
      if (order == o) p = q;
    }
    prob *= p;
  }
  return prob;
}

std::vector<ScoredAction> HeuristicBlueprint::top_actions(const GameState& state,
                                                          int player,
                                                          size_t limit) const {
  const auto units = state.units_of(player);
  RMSEARCH_CHECK(!units.empty(), "player has no units to order");
  const size_t width = std::max<size_t>(limit * beam_factor_, 1);
  const auto dist = target_distance(state, player);

  std::vector<Partial> beam = {Partial{}};
  for (int province : units) {
    const auto orders = legal_orders(state, province);
    const auto probs = softmax(order_logits(state, province, orders, dist), 1.0);
    std::vector<Partial> next;
    next.reserve(beam.size() * orders.size());
    for (const Partial& partial : beam) {
      for (size_t i = 0; i < orders.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        Partial grown = partial;
        grown.action.push_back(orders[i]);
        grown.log_prob += std::log(probs[i]);
        next.push_back(std::move(grown));
      }
    }
    const size_t keep = std::min(width, next.size());
    std::partial_sort(next.begin(), next.begin() + keep, next.end(), better);
    next.resize(keep);
    beam = std::move(next);
  }
  std::sort(beam.begin(), beam.end(), better);
  if (beam.size() > limit) beam.resize(limit);
  std::vector<ScoredAction> out;
  out.reserve(beam.size());
  for (Partial& p : beam) out.push_back({std::move(p.action), std::exp(p.log_prob)});
  return out;
}

Action HeuristicBlueprint::sample(const GameState& state, int player, Rng& rng) const {
  const auto dist = target_distance(state, player);
  Action action;
  for (int province : state.units_of(player)) {
    const auto orders = legal_orders(state, province);
    const auto probs = softmax(order_logits(state, province, orders, dist), temperature_);
    action.push_back(orders[sample_index(probs, rng)]);
  }
  return action;
}

}  // namespace rmsearch
