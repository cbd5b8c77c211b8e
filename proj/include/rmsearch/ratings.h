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

// Pairwise-outcome ratings. Minimizes
//   sum_{(i, j)} -log sigmoid(s_i - s_j) + lambda * |s|_2
// by plain gradient descent from s = 0.

#ifndef RMSEARCH_RATINGS_H_
#define RMSEARCH_RATINGS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rmsearch {

// pairs[k] = (i, j): player i finished ahead of player j in some game.
struct OutcomeDataset {
  int num_players = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::string> player_names;  // optional, indexed by id

  void validate() const;
};

struct RatingConfig {
  double lambda = 0.1;
  double learning_rate = 0.01;
  int steps = 5000;
  // lambda * |s|^2 instead of lambda * |s|.
  bool squared_norm = false;
};

struct RatingVector {
  std::vector<double> s;
  double lambda = 0.0;
  double final_loss = 0.0;
};

double rating_loss(std::span<const double> s, const OutcomeDataset& data, double lambda,
                   bool squared_norm = false);

// Gradient of rating_loss. The non-squared norm uses the zero subgradient at
// s = 0.
std::vector<double> rating_gradient(std::span<const double> s, const OutcomeDataset& data,
                                    double lambda, bool squared_norm = false);

// Throws DivergenceError if the loss stops being finite.
RatingVector fit_ratings(const OutcomeDataset& data, const RatingConfig& config);

// One row of a results table: lower rank is a better outcome.
struct OutcomeRow {
  std::string game_id;
  std::string player_id;
  int rank = 0;
};

// Every ordered pair of distinct players in the same game with different
// ranks. Players are indexed in sorted id order.
OutcomeDataset dataset_from_outcomes(const std::vector<OutcomeRow>& rows);

// Dense ranks (1 = best) from final scores: survivors ahead of eliminated
// players, then higher score first. Equal outcomes share a rank.
std::vector<int> outcome_ranks(std::span<const double> scores,
                               std::span<const char> survived);

// game_id,player_id,rank with a header line.
std::vector<OutcomeRow> read_outcomes_csv(const std::string& path);
void write_outcomes_csv(const std::string& path, const std::vector<OutcomeRow>& rows);
// player_id,rating
void write_ratings_csv(const std::string& path, const OutcomeDataset& data,
                       const RatingVector& ratings);

}  // namespace rmsearch

#endif  // RMSEARCH_RATINGS_H_
