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

#ifndef RMSEARCH_RNG_H_
#define RMSEARCH_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace rmsearch {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits. Unlike
// std::uniform_real_distribution this is identical across standard libraries,
// which the byte-identical output tables depend on.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// splitmix64 finalizer; used to fan a master seed out to independent streams.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
  return mix_seed(mix_seed(seed, a), b);
}

// Inverse-CDF draw from a probability vector. Falls back to the last index
// with positive mass when rounding leaves u above the cumulative sum.
inline int sample_index(std::span<const double> probs, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_positive = static_cast<int>(i);
    if (u < acc) return last_positive;
  }
  return last_positive;
}

}  // namespace rmsearch

#endif  // RMSEARCH_RNG_H_
