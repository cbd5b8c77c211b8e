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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "rmsearch/errors.h"
#include "rmsearch/estimators.h"

namespace rmsearch {
namespace {

// Entropy straight from the logits, sharing nothing with the library.
double reference_entropy(const std::vector<double>& logits) {
  double z = 0.0;
  for (double l : logits) z += std::exp(l);
  double h = 0.0;
  for (double l : logits) {
    const double p = std::exp(l) / z;
    h -= p * std::log(p);
  }
  return h;
}

std::vector<double> finite_difference_grad(const std::vector<double>& logits) {
  const double h = 1e-5;
  std::vector<double> g(logits.size());
  for (size_t k = 0; k < logits.size(); ++k) {
    auto plus = logits, minus = logits;
    plus[k] += h;
    minus[k] -= h;
    g[k] = (reference_entropy(plus) - reference_entropy(minus)) / (2 * h);
  }
  return g;
}

CategoricalModel random_model(Rng& rng) {
  const int n = 2 + static_cast<int>(rng() % 6);
  std::vector<double> logits(n);
  for (double& l : logits) l = 4.0 * uniform01(rng) - 2.0;
  return CategoricalModel(logits);
}

TEST_CASE("categorical model") {
  const CategoricalModel m({0.0, std::log(3.0)});
  CHECK(m.probs()[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(m.probs()[1] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::abs(std::accumulate(m.probs().begin(), m.probs().end(), 0.0) - 1.0) <= 1e-12);
  CHECK(entropy(m) == doctest::Approx(reference_entropy(m.logits())).epsilon(1e-12));
  CHECK_THROWS_AS(CategoricalModel({1.0}), ContractError);
}

TEST_CASE("exact entropy gradient") {
  const auto uniform = exact_entropy_grad(CategoricalModel({0.3, 0.3, 0.3, 0.3}));
  for (double g : uniform) CHECK(std::abs(g) <= 1e-15);

  const auto two = exact_entropy_grad(CategoricalModel({1.0, 0.0}));
  const auto fd = finite_difference_grad({1.0, 0.0});
  for (int k = 0; k < 2; ++k) CHECK(std::abs(two[k] - fd[k]) <= 1e-8);

  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const CategoricalModel m = random_model(rng);
    const auto g = exact_entropy_grad(m);
    const auto ref = finite_difference_grad(m.logits());
    double total = 0.0;
    for (int k = 0; k < m.size(); ++k) {
      CHECK(std::abs(g[k] - ref[k]) <= 1e-8);
      total += g[k];
    }
    CHECK(std::abs(total) <= 1e-12);
  }
}

TEST_CASE("estimator converges to the exact gradient") {
  const CategoricalModel m({0.0, 0.5, 1.0, 1.5, 2.0});
  Rng rng(2024);
  const auto est = entropy_grad_estimate(m, 1000000, rng);
  const auto exact = exact_entropy_grad(m);
  CHECK(est.num_samples == 1000000);
  for (int k = 0; k < m.size(); ++k) {
    CHECK(est.std_error[k] > 0.0);
    CHECK(std::abs(est.mean[k] - exact[k]) <= 4.0 * est.std_error[k]);
  }

  const CategoricalModel uniform({1.0, 1.0, 1.0});
  Rng rng2(9);
  const auto zero = entropy_grad_estimate(uniform, 100000, rng2);
  // Every term is -(1 - log 3)(e_a - 1/3); the mean is not exactly zero.
  for (int k = 0; k < 3; ++k) CHECK(std::abs(zero.mean[k]) <= 4.0 * zero.std_error[k]);
}

TEST_CASE("single sample estimate is the sampled term") {
  const CategoricalModel m({0.2, -0.4, 1.1});
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng a(seed), b(seed);
    const auto est = entropy_grad_estimate(m, 1, a);
    const int outcome = sample_outcome(m, b);
    const auto term = entropy_grad_term(m, outcome);
    CHECK(est.mean == term);
    CHECK(est.std_error == std::vector<double>(3, 0.0));
  }
  Rng rng(0);
  CHECK_THROWS_AS(entropy_grad_estimate(m, 0, rng), ContractError);
}

TEST_CASE("estimator is unbiased across batches") {
  Rng models_rng(77);
  for (int model_id = 0; model_id < 10; ++model_id) {
    const CategoricalModel m = random_model(models_rng);
    const auto exact = exact_entropy_grad(m);
    const int batches = 200;
    std::vector<double> sum(m.size(), 0.0), sum_sq(m.size(), 0.0);
    for (int b = 0; b < batches; ++b) {
      Rng rng(mix_seed(1234, model_id, b));
      const auto est = entropy_grad_estimate(m, 10000, rng);
      for (int k = 0; k < m.size(); ++k) {
        sum[k] += est.mean[k];
        sum_sq[k] += est.mean[k] * est.mean[k];
      }
    }
    for (int k = 0; k < m.size(); ++k) {
      const double mean = sum[k] / batches;
      const double var = (sum_sq[k] - batches * mean * mean) / (batches - 1);
      const double se = std::sqrt(var / batches);
      CHECK(std::abs(mean - exact[k]) <= 4.0 * se);
    }
  }
}

TEST_CASE("shift invariance") {
  const std::vector<double> logits = {0.1, -0.7, 0.9, 0.0};
  std::vector<double> shifted = logits;
  for (double& l : shifted) l += 3.25;
  const CategoricalModel a(logits), b(shifted);
  const auto ga = exact_entropy_grad(a), gb = exact_entropy_grad(b);
  for (int k = 0; k < a.size(); ++k) CHECK(std::abs(ga[k] - gb[k]) <= 1e-12);
  Rng r1(8), r2(8);
  const auto ea = entropy_grad_estimate(a, 50000, r1);
  const auto eb = entropy_grad_estimate(b, 50000, r2);
  for (int k = 0; k < a.size(); ++k) CHECK(std::abs(ea.mean[k] - eb.mean[k]) <= ea.std_error[k]);
}

TEST_CASE("verification table") {
  const std::vector<CategoricalModel> models = {CategoricalModel({0.0, 1.0}),
                                                CategoricalModel({0.5, 0.0, -0.5})};
  const auto rows = check_entropy_grad(models, 20000, 3);
  CHECK(rows.size() == 5);
  CHECK(rows[2].model_id == 1);
  CHECK(rows[2].coordinate == 0);
  const auto csv = entropy_check_csv(rows);
  CHECK(csv.rfind("model_id,coordinate,exact,estimate,stderr,z_score\n", 0) == 0);
  CHECK(entropy_check_csv(check_entropy_grad(models, 20000, 3)) == csv);
}

}  // namespace
}  // namespace rmsearch
