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

// GridConquest: a small simultaneous-move territory game with Diplomacy-style
// hold/move/support orders, supply centers, and yearly adjustments. There are
// no convoys, coasts or retreats; a dislodged unit is destroyed.

#ifndef RMSEARCH_GRID_CONQUEST_H_
#define RMSEARCH_GRID_CONQUEST_H_

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "rmsearch/matrix_game.h"

namespace rmsearch {

inline constexpr int kNobody = -1;

struct Board {
  int num_players = 0;
  int num_provinces = 0;
  int horizon = 10;  // number of years (one movement phase each)
  std::vector<std::string> names;
  std::vector<std::vector<int>> adjacency;  // sorted ascending
  std::vector<char> is_sc;
  std::vector<int> home_of;  // player whose home SC this is, or kNobody
  std::vector<std::vector<int>> distance;  // all-pairs shortest path

  int num_scs() const;
  bool adjacent(int a, int b) const;
  int province_id(const std::string& name) const;

  // rows x cols torus; `homes[p]` lists player p's home SC provinces.
  static Board torus(int rows, int cols, std::vector<std::vector<int>> homes,
                     int horizon);

  // 4 players, 4x4 wraparound grid, 8 SCs (2 homes each), 10 years.
  static Board standard();
};

enum class Season { kMovement, kAdjustment };

struct GameState {
  std::shared_ptr<const Board> board;
  std::vector<int> owner;  // per province: SC owner or kNobody
  std::vector<int> unit;   // per province: unit owner or kNobody
  int year = 0;
  Season season = Season::kMovement;

  int num_players() const { return board->num_players; }
  std::vector<int> sc_counts() const;
  std::vector<int> unit_counts() const;
  std::vector<int> units_of(int player) const;  // ascending province ids
  // Player holding a strict majority of SCs, or kNobody.
  int majority_holder() const;
  bool is_terminal() const;

  bool operator==(const GameState& other) const;
};

GameState initial_state(std::shared_ptr<const Board> board);

enum class OrderKind { kHold = 0, kMove = 1, kSupportHold = 2, kSupportMove = 3 };

// Field order matters: the defaulted comparison sorts by source first.
struct UnitOrder {
  int source = 0;
  OrderKind kind = OrderKind::kHold;
  int target = kNobody;            // move / support destination
  int supported_source = kNobody;  // support-move only

  auto operator<=>(const UnitOrder&) const = default;

  static UnitOrder hold(int src) { return {src, OrderKind::kHold, kNobody, kNobody}; }
  static UnitOrder move(int src, int dst) { return {src, OrderKind::kMove, dst, kNobody}; }
  static UnitOrder support_hold(int src, int held) {
    return {src, OrderKind::kSupportHold, held, kNobody};
  }
  static UnitOrder support_move(int src, int from, int to) {
    return {src, OrderKind::kSupportMove, to, from};
  }
};

// One order per owned unit, sorted by source province. Actions compare
// lexicographically, which is the tie-break order used by the search code.
using Action = std::vector<UnitOrder>;
using JointAction = std::vector<Action>;

std::string order_to_string(const Board& board, const UnitOrder& order);
std::string action_to_string(const Board& board, const Action& action);

// Every order the unit at `province` may legally issue, in ascending order.
std::vector<UnitOrder> legal_orders(const GameState& state, int province);

// Throws InvalidOrderError unless every player issued exactly one legal order
// per owned unit.
void validate_joint(const GameState& state, const JointAction& joint);

// Simultaneous order resolution; returns the state in the adjustment season.
GameState resolve_movement(const GameState& state, const JointAction& joint);
// Ownership update plus builds/disbands; advances to next year's movement.
GameState apply_adjustments(const GameState& state);
// resolve_movement followed by apply_adjustments.
GameState adjudicate(const GameState& state, const JointAction& joint);

// One-hot win for a majority holder, otherwise SoS of SC counts.
// Throws ContractError for a non-terminal state.
ScoreVector terminal_value(const GameState& state);

nlohmann::json to_json(const Board& board);
nlohmann::json to_json(const GameState& state);
nlohmann::json to_json(const Board& board, const Action& action);
// Board topology is taken from `board`; the document must match it.
GameState state_from_json(const nlohmann::json& doc,
                          std::shared_ptr<const Board> board);
Action action_from_json(const nlohmann::json& doc, const Board& board);

}  // namespace rmsearch

#endif  // RMSEARCH_GRID_CONQUEST_H_
