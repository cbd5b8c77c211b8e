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

#include "rmsearch/grid_conquest.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "rmsearch/errors.h"

namespace rmsearch {

namespace {

constexpr int kUnreachable = std::numeric_limits<int>::max() / 2;

std::vector<std::vector<int>> all_pairs_bfs(
    const std::vector<std::vector<int>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
  for (int s = 0; s < n; ++s) {
    std::deque<int> queue{s};
    dist[s][s] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adjacency[u]) {
        if (dist[s][v] == kUnreachable) {
          dist[s][v] = dist[s][u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

}  // namespace

int Board::num_scs() const {
  return static_cast<int>(std::count(is_sc.begin(), is_sc.end(), 1));
}

bool Board::adjacent(int a, int b) const {
  if (a < 0 || a >= num_provinces || b < 0 || b >= num_provinces) return false;
  return std::binary_search(adjacency[a].begin(), adjacency[a].end(), b);
}

int Board::province_id(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidOrderError("unknown province " + name);
  return static_cast<int>(it - names.begin());
}

Board Board::torus(int rows, int cols, std::vector<std::vector<int>> homes,
                   int horizon) {
  RMSEARCH_CHECK(rows >= 1 && cols >= 1 && rows * cols >= 2, "board too small");
  RMSEARCH_CHECK(horizon >= 1, "horizon must be >= 1");
  Board board;
  board.num_players = static_cast<int>(homes.size());
  board.num_provinces = rows * cols;
  board.horizon = horizon;
  board.adjacency.resize(board.num_provinces);
  board.is_sc.assign(board.num_provinces, 0);
  board.home_of.assign(board.num_provinces, kNobody);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      board.names.push_back(std::string(1, static_cast<char>('a' + c)) +
                            std::to_string(r + 1));
      const int id = r * cols + c;
      auto& adj = board.adjacency[id];
      for (auto [dr, dc] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
        const int nb = ((r + dr + rows) % rows) * cols + (c + dc + cols) % cols;
        if (nb != id) adj.push_back(nb);
      }
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
  }
  for (int p = 0; p < board.num_players; ++p) {
    for (int prov : homes[p]) {
      RMSEARCH_CHECK(prov >= 0 && prov < board.num_provinces,
                     "home province out of range");
      RMSEARCH_CHECK(board.home_of[prov] == kNobody, "home SC assigned twice");
      board.is_sc[prov] = 1;
      board.home_of[prov] = p;
    }
  }
  board.distance = all_pairs_bfs(board.adjacency);
  return board;
}

Board Board::standard() {
  // Player p's homes sit in row p; translating by (1 row, 2 cols) maps each
  // player's homes onto the next player's, so the board is seat-symmetric.
  return torus(4, 4, {{0, 1}, {6, 7}, {8, 9}, {14, 15}}, 10);
}

std::vector<int> GameState::sc_counts() const {
  std::vector<int> counts(board->num_players, 0);
  for (int p = 0; p < board->num_provinces; ++p) {
    if (board->is_sc[p] && owner[p] != kNobody) ++counts[owner[p]];
  }
  return counts;
}

std::vector<int> GameState::unit_counts() const {
  std::vector<int> counts(board->num_players, 0);
  for (int u : unit) {
    if (u != kNobody) ++counts[u];
  }
  return counts;
}

std::vector<int> GameState::units_of(int player) const {
  std::vector<int> out;
  for (int p = 0; p < board->num_provinces; ++p) {
    if (unit[p] == player) out.push_back(p);
  }
  return out;
}

int GameState::majority_holder() const {
  const auto counts = sc_counts();
  const int total = board->num_scs();
  for (int p = 0; p < board->num_players; ++p) {
    if (2 * counts[p] > total) return p;
  }
  return kNobody;
}

bool GameState::is_terminal() const {
  if (season != Season::kMovement) return false;
  return year >= board->horizon || majority_holder() != kNobody;
}

bool GameState::operator==(const GameState& other) const {
  return owner == other.owner && unit == other.unit && year == other.year &&
         season == other.season;
}

GameState initial_state(std::shared_ptr<const Board> board) {
  GameState state;
  state.owner.assign(board->num_provinces, kNobody);
  state.unit.assign(board->num_provinces, kNobody);
  for (int p = 0; p < board->num_provinces; ++p) {
    if (board->home_of[p] != kNobody) {
      state.owner[p] = board->home_of[p];
      state.unit[p] = board->home_of[p];
    }
  }
  state.board = std::move(board);
  return state;
}

std::string order_to_string(const Board& board, const UnitOrder& order) {
  const std::string src = "A " + board.names.at(order.source);
  switch (order.kind) {
    case OrderKind::kHold:
      return src + " H";
    case OrderKind::kMove:
      return src + " - " + board.names.at(order.target);
    case OrderKind::kSupportHold:
      return src + " S " + board.names.at(order.target);
    case OrderKind::kSupportMove:
      return src + " S " + board.names.at(order.supported_source) + " - " +
             board.names.at(order.target);
  }
  return src;
}

std::string action_to_string(const Board& board, const Action& action) {
  std::string out = "(";
  for (size_t i = 0; i < action.size(); ++i) {
    if (i) out += ", ";
    out += "'" + order_to_string(board, action[i]) + "'";
  }
  return out + ")";
}

std::vector<UnitOrder> legal_orders(const GameState& state, int province) {
  const Board& board = *state.board;
  RMSEARCH_CHECK(province >= 0 && province < board.num_provinces &&
                     state.unit[province] != kNobody,
                 "no unit in province");
  std::vector<UnitOrder> orders;
  orders.push_back(UnitOrder::hold(province));
  for (int nb : board.adjacency[province]) orders.push_back(UnitOrder::move(province, nb));
  for (int nb : board.adjacency[province]) {
    if (state.unit[nb] != kNobody) orders.push_back(UnitOrder::support_hold(province, nb));
  }
  for (int to : board.adjacency[province]) {
    for (int from : board.adjacency[to]) {
      if (from != province && state.unit[from] != kNobody) {
        orders.push_back(UnitOrder::support_move(province, from, to));
      }
    }
  }
  std::sort(orders.begin(), orders.end());
  return orders;
}

namespace {

void validate_order(const GameState& state, const UnitOrder& o) {
  const Board& board = *state.board;
  auto fail = [&](const std::string& why) {
    throw InvalidOrderError("invalid order at province " +
                            std::to_string(o.source) + ": " + why);
  };
  switch (o.kind) {
    case OrderKind::kHold:
      break;
    case OrderKind::kMove:
      if (!board.adjacent(o.source, o.target)) fail("move target not adjacent");
      break;
    case OrderKind::kSupportHold:
      if (!board.adjacent(o.source, o.target)) fail("support target not adjacent");
      break;
    case OrderKind::kSupportMove:
      if (!board.adjacent(o.source, o.target)) fail("support target not adjacent");
      if (o.supported_source == o.source) fail("unit cannot support itself");
      if (!board.adjacent(o.supported_source, o.target)) {
        fail("supported move is not between adjacent provinces");
      }
      break;
  }
}

}  // namespace

void validate_joint(const GameState& state, const JointAction& joint) {
  if (state.season != Season::kMovement) {
    throw InvalidOrderError("orders are only accepted in a movement phase");
  }
  if (static_cast<int>(joint.size()) != state.num_players()) {
    throw InvalidOrderError("joint action must have one action per player");
  }
  for (int p = 0; p < state.num_players(); ++p) {
    const auto units = state.units_of(p);
    const Action& action = joint[p];
    if (action.size() != units.size()) {
      throw InvalidOrderError("player " + std::to_string(p) +
                              " must issue exactly one order per unit");
    }
    for (size_t i = 0; i < action.size(); ++i) {
      if (action[i].source != units[i]) {
        throw InvalidOrderError("player " + std::to_string(p) +
                                " ordered a unit it does not own");
      }
      validate_order(state, action[i]);
    }
  }
}

GameState resolve_movement(const GameState& state, const JointAction& joint) {
  validate_joint(state, joint);
  const Board& board = *state.board;
  const int n = board.num_provinces;

  std::vector<const UnitOrder*> order_at(n, nullptr);
  for (const Action& action : joint) {
    for (const UnitOrder& o : action) order_at[o.source] = &o;
  }
  auto is_move = [&](int p) {
    return order_at[p] && order_at[p]->kind == OrderKind::kMove;
  };

  // A support is cut when its province is attacked by any unit other than
  // the one it supports.
  auto is_cut = [&](const UnitOrder& s) {
    const int supported = s.kind == OrderKind::kSupportHold ? s.target : s.supported_source;
    for (int p = 0; p < n; ++p) {
      if (p != supported && is_move(p) && order_at[p]->target == s.source) return true;
    }
    return false;
  };

  std::vector<int> move_strength(n, 1), hold_strength(n, 1);
  for (int p = 0; p < n; ++p) {
    const UnitOrder* s = order_at[p];
    if (!s) continue;
    if (s->kind == OrderKind::kSupportHold) {
      if (state.unit[s->target] != kNobody && !is_move(s->target) && !is_cut(*s)) {
        ++hold_strength[s->target];
      }
    } else if (s->kind == OrderKind::kSupportMove) {
      const int from = s->supported_source;
      if (is_move(from) && order_at[from]->target == s->target && !is_cut(*s)) {
        ++move_strength[from];
      }
    }
  }

  enum class Status { kUnresolved, kSuccess, kFail };
  std::vector<Status> status(n, Status::kUnresolved);
  std::vector<int> movers;
  for (int p = 0; p < n; ++p) {
    if (is_move(p)) movers.push_back(p);
  }

  while (true) {
    bool progress = false;
    for (int src : movers) {
      if (status[src] != Status::kUnresolved) continue;
      const int dst = order_at[src]->target;
      const int strength = move_strength[src];
      Status verdict = Status::kUnresolved;
      bool beaten = false;
      for (int other : movers) {
        if (other != src && order_at[other]->target == dst &&
            move_strength[other] >= strength) {
          beaten = true;
          break;
        }
      }
      if (beaten) {
        verdict = Status::kFail;
      } else if (state.unit[dst] == kNobody) {
        verdict = Status::kSuccess;
      } else {
        const bool own_unit = state.unit[dst] == state.unit[src];
        if (!is_move(dst)) {
          verdict = !own_unit && strength > hold_strength[dst] ? Status::kSuccess
                                                                : Status::kFail;
        } else if (order_at[dst]->target == src) {
          // Head-to-head: the units cannot swap.
          verdict = !own_unit && strength > move_strength[dst] ? Status::kSuccess
                                                                : Status::kFail;
        } else if (status[dst] == Status::kSuccess) {
          verdict = Status::kSuccess;
        } else if (status[dst] == Status::kFail) {
          verdict = !own_unit && strength > 1 ? Status::kSuccess : Status::kFail;
        }
      }
      if (verdict != Status::kUnresolved) {
        status[src] = verdict;
        progress = true;
      }
    }
    if (progress) continue;
    // Whatever is left waits on a circular chain of moves; every link has
    // already beaten its competitors, so the whole rotation goes through.
    bool any = false;
    for (int src : movers) {
      if (status[src] == Status::kUnresolved) {
        status[src] = Status::kSuccess;
        any = true;
      }
    }
    if (!any) break;
  }

  GameState next = state;
  next.season = Season::kAdjustment;
  std::fill(next.unit.begin(), next.unit.end(), kNobody);
  std::vector<char> taken(n, 0);
  for (int src : movers) {
    if (status[src] == Status::kSuccess) taken[order_at[src]->target] = 1;
  }
  for (int p = 0; p < n; ++p) {
    if (state.unit[p] == kNobody) continue;
    if (is_move(p) && status[p] == Status::kSuccess) {
      next.unit[order_at[p]->target] = state.unit[p];
    } else if (!taken[p]) {
      next.unit[p] = state.unit[p];
    }
    // else: dislodged and destroyed.
  }
  return next;
}

GameState apply_adjustments(const GameState& state) {
  RMSEARCH_CHECK(state.season == Season::kAdjustment,
                 "adjustments run only in the adjustment season");
  const Board& board = *state.board;
  GameState next = state;
  for (int p = 0; p < board.num_provinces; ++p) {
    if (board.is_sc[p] && next.unit[p] != kNobody) next.owner[p] = next.unit[p];
  }
  const auto scs = next.sc_counts();
  const auto units = next.unit_counts();
  for (int player = 0; player < board.num_players; ++player) {
    if (units[player] > scs[player]) {
      std::vector<std::pair<int, int>> ranked;  // (-distance, province)
      for (int prov : next.units_of(player)) {
        int nearest = kUnreachable;
        for (int sc = 0; sc < board.num_provinces; ++sc) {
          if (board.is_sc[sc] && next.owner[sc] == player) {
            nearest = std::min(nearest, board.distance[prov][sc]);
          }
        }
        ranked.emplace_back(-nearest, prov);
      }
      std::sort(ranked.begin(), ranked.end());
      for (int k = 0; k < units[player] - scs[player]; ++k) {
        next.unit[ranked[k].second] = kNobody;
      }
    } else if (units[player] < scs[player]) {
      int deficit = scs[player] - units[player];
      for (int prov = 0; prov < board.num_provinces && deficit > 0; ++prov) {
        if (board.home_of[prov] == player && next.owner[prov] == player &&
            next.unit[prov] == kNobody) {
          next.unit[prov] = player;
          --deficit;
        }
      }
    }
  }
  next.season = Season::kMovement;
  next.year = state.year + 1;
  return next;
}

GameState adjudicate(const GameState& state, const JointAction& joint) {
  return apply_adjustments(resolve_movement(state, joint));
}

ScoreVector terminal_value(const GameState& state) {
  RMSEARCH_CHECK(state.is_terminal(), "terminal_value on a non-terminal state");
  const int winner = state.majority_holder();
  if (winner != kNobody) {
    ScoreVector scores(state.num_players(), 0.0);
    scores[winner] = 1.0;
    return scores;
  }
  return sos_scores(state.sc_counts());
}

nlohmann::json to_json(const Board& board) {
  return {{"num_players", board.num_players},
          {"names", board.names},
          {"adjacency", board.adjacency},
          {"home_of", board.home_of},
          {"horizon", board.horizon}};
}

nlohmann::json to_json(const GameState& state) {
  return {{"year", state.year},
          {"season", state.season == Season::kMovement ? "movement" : "adjustment"},
          {"owner", state.owner},
          {"unit", state.unit}};
}

nlohmann::json to_json(const Board& board, const Action& action) {
  auto orders = nlohmann::json::array();
  for (const UnitOrder& o : action) orders.push_back(order_to_string(board, o));
  return orders;
}

GameState state_from_json(const nlohmann::json& doc,
                          std::shared_ptr<const Board> board) {
  try {
    GameState state;
    state.year = doc.at("year").get<int>();
    const auto season = doc.at("season").get<std::string>();
    if (season != "movement" && season != "adjustment") {
      throw ConfigError("unknown season " + season);
    }
    state.season = season == "movement" ? Season::kMovement : Season::kAdjustment;
    state.owner = doc.at("owner").get<std::vector<int>>();
    state.unit = doc.at("unit").get<std::vector<int>>();
    if (static_cast<int>(state.owner.size()) != board->num_provinces ||
        static_cast<int>(state.unit.size()) != board->num_provinces) {
      throw ConfigError("state does not match the board");
    }
    state.board = std::move(board);
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed game state: ") + e.what());
  }
}

Action action_from_json(const nlohmann::json& doc, const Board& board) {
  Action action;
  for (const auto& item : doc) {
    std::istringstream in(item.get<std::string>());
    std::string unit_tag, src, op;
    in >> unit_tag >> src >> op;
    if (unit_tag != "A") throw InvalidOrderError("order must start with 'A'");
    const int source = board.province_id(src);
    if (op == "H") {
      action.push_back(UnitOrder::hold(source));
    } else if (op == "-") {
      std::string dst;
      in >> dst;
      action.push_back(UnitOrder::move(source, board.province_id(dst)));
    } else if (op == "S") {
      std::string first, dash, second;
      in >> first >> dash >> second;
      if (dash.empty()) {
        action.push_back(UnitOrder::support_hold(source, board.province_id(first)));
      } else {
        action.push_back(UnitOrder::support_move(source, board.province_id(first),
                                                 board.province_id(second)));
      }
    } else {
      throw InvalidOrderError("cannot parse order '" + item.get<std::string>() + "'");
    }
  }
  std::sort(action.begin(), action.end());
  return action;
}

}  // namespace rmsearch
