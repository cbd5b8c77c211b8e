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

// Test-only reference implementations. Nothing here shares code with the
// library paths it is used to check.

#ifndef RMSEARCH_TESTS_ORACLES_H_
#define RMSEARCH_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "rmsearch/matrix_game.h"
#include "rmsearch/rng.h"
#include "rmsearch/subgame.h"

namespace rmsearch::testing {

// Expected utility of each own action by recursive enumeration over the
// opponents' actions, reading payoffs only through MatrixGame::utility.
inline std::vector<double> brute_force_action_values(const MatrixGame& game,
                                                     const std::vector<Policy>& policies,
                                                     int player) {
  const int n = game.num_players();
  std::vector<double> values(game.num_actions(player), 0.0);
  std::vector<int> joint(n, 0);
  std::function<void(int, double)> recurse = [&](int k, double weight) {
    if (k == n) {
      values[joint[player]] += weight * game.utility(joint)[player];
      return;
    }
    for (int a = 0; a < game.num_actions(k); ++a) {
      joint[k] = a;
      recurse(k + 1, k == player ? weight : weight * policies[k][a]);
    }
  };
  recurse(0, 1.0);
  return values;
}

inline MatrixGame random_general_game(Rng& rng, int max_players, int max_actions) {
  const int n = 2 + static_cast<int>(rng() % (max_players - 1));
  std::vector<int> counts(n);
  size_t joints = 1;
  for (int& c : counts) {
    c = 1 + static_cast<int>(rng() % max_actions);
    joints *= c;
  }
  std::vector<std::vector<double>> payoffs(n, std::vector<double>(joints));
  for (auto& row : payoffs) {
    for (double& x : row) x = 2.0 * uniform01(rng) - 1.0;
  }
  return MatrixGame(counts, payoffs);
}

inline std::vector<Policy> random_policies(Rng& rng, const std::vector<int>& counts) {
  std::vector<Policy> out;
  for (int c : counts) {
    Policy p(c);
    double total = 0.0;
    for (double& x : p) {
      // Some exact zeros so pure-ish profiles get exercised.
      x = uniform01(rng) < 0.2 ? 0.0 : uniform01(rng);
      total += x;
    }
    if (total == 0.0) {
      p[0] = 1.0;
      total = 1.0;
    }
    for (double& x : p) x /= total;
    out.push_back(p);
  }
  return out;
}

// Matrix payoffs plus Gaussian noise drawn from the query stream.
class NoisyOracle final : public UtilityOracle {
 public:
  NoisyOracle(MatrixGame game, double sigma) : game_(std::move(game)), sigma_(sigma) {}

  std::vector<double> evaluate(std::span<const int> joint, uint64_t stream) const override {
    auto u = game_.utility(joint);
    if (sigma_ > 0.0) {
      Rng rng(stream);
      std::normal_distribution<double> noise(0.0, sigma_);
      for (double& x : u) x += noise(rng);
    }
    return u;
  }
  bool is_deterministic() const override { return sigma_ == 0.0; }
  std::string kind() const override { return "noisy"; }

 private:
  MatrixGame game_;
  double sigma_;
};

// Minimum over a 3-player rating grid of
//   sum_k count_k * log(1 + exp(-(s_i - s_j))) + lambda * |s|,
// first on a coarse grid over [-range, range]^3 and then on a fine grid
// around the coarse optimum.
struct GridOptimum {
  double loss = 0.0;
  double s[3] = {0, 0, 0};
};

inline GridOptimum grid_rating_optimum(const std::vector<std::pair<std::pair<int, int>, int>>& counted,
                                       double lambda, double range) {
  auto loss = [&](const double* s) {
    double total = lambda * std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    for (const auto& [pair, count] : counted) {
      total += count * std::log(1.0 + std::exp(-(s[pair.first] - s[pair.second])));
    }
    return total;
  };
  GridOptimum best;
  best.loss = loss(best.s);
  auto scan = [&](const double* center, double half, double step) {
    GridOptimum local = best;
    const int n = static_cast<int>(std::lround(2 * half / step));
    double s[3];
    for (int a = 0; a <= n; ++a) {
      s[0] = center[0] - half + a * step;
      for (int b = 0; b <= n; ++b) {
        s[1] = center[1] - half + b * step;
        for (int c = 0; c <= n; ++c) {
          s[2] = center[2] - half + c * step;
          const double l = loss(s);
          if (l < local.loss) {
            local.loss = l;
            std::copy(s, s + 3, local.s);
          }
        }
      }
    }
    best = local;
  };
  const double origin[3] = {0, 0, 0};
  scan(origin, range, 0.1);
  const double coarse[3] = {best.s[0], best.s[1], best.s[2]};
  scan(coarse, 0.1, 0.002);
  return best;
}

}  // namespace rmsearch::testing

#endif  // RMSEARCH_TESTS_ORACLES_H_
