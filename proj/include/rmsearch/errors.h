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

#ifndef RMSEARCH_ERRORS_H_
#define RMSEARCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rmsearch {

// Precondition violated by the caller (bad index, length mismatch, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// sos_scores called with all-zero supply-center counts.
class UndefinedScoreError : public ContractError {
 public:
  using ContractError::ContractError;
};

// A joint action containing an illegal unit order.
class InvalidOrderError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Exact best response requested on an oracle that cannot be enumerated.
class UnsupportedOracleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Rating fit produced a non-finite loss.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, int step)
      : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

// Malformed experiment configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RMSEARCH_CHECK(cond, msg)                                       \
  do {                                                                  \
    if (!(cond)) throw ::rmsearch::ContractError(std::string(msg));     \
  } while (0)

}  // namespace rmsearch

#endif  // RMSEARCH_ERRORS_H_
