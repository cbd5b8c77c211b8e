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

#include "rmsearch/estimators.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rmsearch/errors.h"

namespace rmsearch {

CategoricalModel::CategoricalModel(std::vector<double> logits) : logits_(std::move(logits)) {
  RMSEARCH_CHECK(logits_.size() >= 2, "need at least two outcomes");
  const double top = *std::max_element(logits_.begin(), logits_.end());
  double z = 0.0;
  for (double l : logits_) {
    RMSEARCH_CHECK(std::isfinite(l), "logits must be finite");
    z += std::exp(l - top);
  }
  const double log_z = top + std::log(z);
  for (double l : logits_) {
    log_probs_.push_back(l - log_z);
    probs_.push_back(std::exp(l - log_z));
  }
}

double entropy(const CategoricalModel& model) {
  double h = 0.0;
  for (int a = 0; a < model.size(); ++a) h -= model.probs()[a] * model.log_prob(a);
  return h;
}

std::vector<double> exact_entropy_grad(const CategoricalModel& model) {
  const auto& pi = model.probs();
  double mean = 0.0;  // sum_a pi_a (1 + log pi_a)
  for (int a = 0; a < model.size(); ++a) mean += pi[a] * (1.0 + model.log_prob(a));
  std::vector<double> g(model.size());
  for (int k = 0; k < model.size(); ++k) {
    g[k] = -pi[k] * (1.0 + model.log_prob(k)) + pi[k] * mean;
  }
  return g;
}

int sample_outcome(const CategoricalModel& model, Rng& rng) {
  return sample_index(model.probs(), rng);
}

std::vector<double> entropy_grad_term(const CategoricalModel& model, int a) {
  RMSEARCH_CHECK(a >= 0 && a < model.size(), "outcome out of range");
  const double w = -(1.0 + model.log_prob(a));
  std::vector<double> term(model.size());
  for (int k = 0; k < model.size(); ++k) {
    term[k] = w * ((k == a ? 1.0 : 0.0) - model.probs()[k]);
  }
  return term;
}

GradientEstimate entropy_grad_estimate(const CategoricalModel& model, long num_samples,
                                       Rng& rng) {
  RMSEARCH_CHECK(num_samples >= 1, "need at least one sample");
  const int n = model.size();
  // The term depends only on the sampled outcome, so tally outcomes.
  std::vector<long> counts(n, 0);
  for (long i = 0; i < num_samples; ++i) ++counts[sample_outcome(model, rng)];
  std::vector<std::vector<double>> terms(n);
  for (int a = 0; a < n; ++a) terms[a] = entropy_grad_term(model, a);

  GradientEstimate est;
  est.num_samples = num_samples;
  est.mean.assign(n, 0.0);
  est.std_error.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double sum = 0.0;
    for (int a = 0; a < n; ++a) sum += counts[a] * terms[a][k];
    est.mean[k] = sum / num_samples;
    if (num_samples > 1) {
      double ss = 0.0;
      for (int a = 0; a < n; ++a) {
        const double d = terms[a][k] - est.mean[k];
        ss += counts[a] * d * d;
      }
      est.std_error[k] = std::sqrt(ss / (num_samples - 1) / num_samples);
    }
  }
  return est;
}

std::vector<EntropyCheckRow> check_entropy_grad(const std::vector<CategoricalModel>& models,
                                                long num_samples, uint64_t seed) {
  std::vector<EntropyCheckRow> rows;
  for (size_t m = 0; m < models.size(); ++m) {
    Rng rng(mix_seed(seed, m));
    const auto exact = exact_entropy_grad(models[m]);
    const auto est = entropy_grad_estimate(models[m], num_samples, rng);
    for (int k = 0; k < models[m].size(); ++k) {
      EntropyCheckRow row;
      row.model_id = static_cast<int>(m);
      row.coordinate = k;
      row.exact = exact[k];
      row.estimate = est.mean[k];
      row.std_error = est.std_error[k];
      row.z_score = row.std_error > 0.0 ? (row.estimate - row.exact) / row.std_error : 0.0;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string entropy_check_csv(const std::vector<EntropyCheckRow>& rows) {
  std::string out = "model_id,coordinate,exact,estimate,stderr,z_score\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%.10f,%.10f,%.10f,%.4f\n", r.model_id, r.coordinate,
                  r.exact, r.estimate, r.std_error, r.z_score);
    out += buf;
  }
  return out;
}

}  // namespace rmsearch
