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

#include "rmsearch/ratings.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "rmsearch/errors.h"

namespace rmsearch {

namespace {

// -log sigmoid(x), stable for large |x|.
double neg_log_sigmoid(double x) {
  return x >= 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double norm2(std::span<const double> s) {
  double sq = 0.0;
  for (double x : s) sq += x * x;
  return std::sqrt(sq);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    fields.push_back(field);
  }
  return fields;
}

}  // namespace

void OutcomeDataset::validate() const {
  RMSEARCH_CHECK(num_players >= 0, "negative player count");
  for (const auto& [i, j] : pairs) {
    RMSEARCH_CHECK(i >= 0 && i < num_players && j >= 0 && j < num_players,
                   "pair id out of range");
    RMSEARCH_CHECK(i != j, "a player cannot beat itself");
  }
  RMSEARCH_CHECK(player_names.empty() ||
                     static_cast<int>(player_names.size()) == num_players,
                 "player name count mismatch");
}

double rating_loss(std::span<const double> s, const OutcomeDataset& data, double lambda,
                   bool squared_norm) {
  RMSEARCH_CHECK(lambda >= 0.0, "lambda must be >= 0");
  RMSEARCH_CHECK(static_cast<int>(s.size()) == data.num_players, "rating size mismatch");
  double loss = 0.0;
  for (const auto& [i, j] : data.pairs) loss += neg_log_sigmoid(s[i] - s[j]);
  const double norm = norm2(s);
  return loss + lambda * (squared_norm ? norm * norm : norm);
}

std::vector<double> rating_gradient(std::span<const double> s, const OutcomeDataset& data,
                                    double lambda, bool squared_norm) {
  RMSEARCH_CHECK(static_cast<int>(s.size()) == data.num_players, "rating size mismatch");
  std::vector<double> grad(s.size(), 0.0);
  for (const auto& [i, j] : data.pairs) {
    // d/dx -log sigmoid(x) = -sigmoid(-x)
    const double g = -sigmoid(-(s[i] - s[j]));
    grad[i] += g;
    grad[j] -= g;
  }
  if (squared_norm) {
    for (size_t k = 0; k < s.size(); ++k) grad[k] += 2.0 * lambda * s[k];
  } else {
    const double norm = norm2(s);
    if (norm > 0.0) {
      for (size_t k = 0; k < s.size(); ++k) grad[k] += lambda * s[k] / norm;
    }
  }
  return grad;
}

RatingVector fit_ratings(const OutcomeDataset& data, const RatingConfig& config) {
  data.validate();
  RMSEARCH_CHECK(config.steps >= 1, "steps must be >= 1");
  RMSEARCH_CHECK(config.lambda >= 0.0, "lambda must be >= 0");
  RMSEARCH_CHECK(config.learning_rate > 0.0, "learning rate must be positive");
  RatingVector out;
  out.lambda = config.lambda;
  out.s.assign(data.num_players, 0.0);
  for (int step = 0; step < config.steps; ++step) {
    const auto grad = rating_gradient(out.s, data, config.lambda, config.squared_norm);
    for (size_t k = 0; k < out.s.size(); ++k) out.s[k] -= config.learning_rate * grad[k];
    const double loss = rating_loss(out.s, data, config.lambda, config.squared_norm);
    if (!std::isfinite(loss)) {
      throw DivergenceError("rating fit diverged at step " + std::to_string(step), step);
    }
    out.final_loss = loss;
  }
  return out;
}

OutcomeDataset dataset_from_outcomes(const std::vector<OutcomeRow>& rows) {
  std::map<std::string, int> ids;
  for (const auto& r : rows) ids.emplace(r.player_id, 0);
  OutcomeDataset data;
  for (auto& [name, id] : ids) {
    id = data.num_players++;
    data.player_names.push_back(name);
  }
  // Games in first-appearance order, rows within a game in input order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const OutcomeRow*>> games;
  for (const auto& r : rows) {
    auto [it, inserted] = games.try_emplace(r.game_id);
    if (inserted) order.push_back(r.game_id);
    it->second.push_back(&r);
  }
  for (const auto& g : order) {
    const auto& members = games[g];
    for (const OutcomeRow* a : members) {
      for (const OutcomeRow* b : members) {
        // The same agent may fill several seats; it is not compared with itself.
        if (a->rank < b->rank && a->player_id != b->player_id) {
          data.pairs.emplace_back(ids[a->player_id], ids[b->player_id]);
        }
      }
    }
  }
  return data;
}

std::vector<int> outcome_ranks(std::span<const double> scores,
                               std::span<const char> survived) {
  RMSEARCH_CHECK(scores.size() == survived.size(), "score/survival size mismatch");
  const size_t n = scores.size();
  auto key = [&](size_t i) { return std::pair<int, double>(survived[i] ? 1 : 0, scores[i]); };
  std::vector<int> ranks(n, 1);
  for (size_t i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> better;
    for (size_t j = 0; j < n; ++j) {
      if (key(j) > key(i)) better.push_back(key(j));
    }
    std::sort(better.begin(), better.end());
    better.erase(std::unique(better.begin(), better.end()), better.end());
    ranks[i] = 1 + static_cast<int>(better.size());
  }
  return ranks;
}

std::vector<OutcomeRow> read_outcomes_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset " + path);
  std::string line;
  std::vector<OutcomeRow> rows;
  bool header = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (header) {
      header = false;
      if (fields.size() >= 3 && fields[2].find_first_not_of("-0123456789") != std::string::npos) {
        continue;
      }
    }
    if (fields.size() != 3) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 3 fields");
    }
    OutcomeRow row{fields[0], fields[1], 0};
    try {
      size_t used = 0;
      row.rank = std::stoi(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": bad rank '" + fields[2] + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_outcomes_csv(const std::string& path, const std::vector<OutcomeRow>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << "game_id,player_id,rank\n";
  for (const auto& r : rows) out << r.game_id << ',' << r.player_id << ',' << r.rank << '\n';
}

void write_ratings_csv(const std::string& path, const OutcomeDataset& data,
                       const RatingVector& ratings) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << "player_id,rating\n";
  char buf[64];
  for (int k = 0; k < data.num_players; ++k) {
    std::snprintf(buf, sizeof(buf), "%.6f", ratings.s[k]);
    out << (data.player_names.empty() ? std::to_string(k) : data.player_names[k]) << ','
        << buf << '\n';
  }
}

}  // namespace rmsearch
