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

// Score-function estimate of the entropy gradient of a categorical policy:
//   dH/dtheta = -E_{a ~ pi}[(1 + log pi(a)) d/dtheta log pi(a)].

#ifndef RMSEARCH_ESTIMATORS_H_
#define RMSEARCH_ESTIMATORS_H_

#include <string>
#include <vector>

#include "rmsearch/rng.h"

namespace rmsearch {

class CategoricalModel {
 public:
  explicit CategoricalModel(std::vector<double> logits);

  int size() const { return static_cast<int>(logits_.size()); }
  const std::vector<double>& logits() const { return logits_; }
  const std::vector<double>& probs() const { return probs_; }
  double log_prob(int a) const { return log_probs_[a]; }

 private:
  std::vector<double> logits_;
  std::vector<double> probs_;
  std::vector<double> log_probs_;
};

double entropy(const CategoricalModel& model);

// Closed form: g_k = -sum_a pi_a (1 + log pi_a) (delta_ak - pi_k).
std::vector<double> exact_entropy_grad(const CategoricalModel& model);

int sample_outcome(const CategoricalModel& model, Rng& rng);

// -(1 + log pi(a)) * (e_a - pi), the single-sample term.
std::vector<double> entropy_grad_term(const CategoricalModel& model, int a);

struct GradientEstimate {
  std::vector<double> mean;
  std::vector<double> std_error;  // 0 when num_samples == 1
  long num_samples = 0;
};

GradientEstimate entropy_grad_estimate(const CategoricalModel& model, long num_samples,
                                       Rng& rng);

struct EntropyCheckRow {
  int model_id = 0;
  int coordinate = 0;
  double exact = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
};

// Estimate vs exact for each model; model m draws from mix_seed(seed, m).
std::vector<EntropyCheckRow> check_entropy_grad(const std::vector<CategoricalModel>& models,
                                                long num_samples, uint64_t seed);

// model_id,coordinate,exact,estimate,stderr,z_score
std::string entropy_check_csv(const std::vector<EntropyCheckRow>& rows);

}  // namespace rmsearch

#endif  // RMSEARCH_ESTIMATORS_H_
