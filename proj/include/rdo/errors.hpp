// Copyright 2026 The rdsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace rdo {

/// A queried subset's stacked data matrix does not have full column rank.
class RankDeficientError : public std::runtime_error {
 public:
  explicit RankDeficientError(const std::string& what) : std::runtime_error(what) {}
};

/// The (n, f, r) budgets violate a solvability condition such as n > 2f + r.
class BudgetInvalidError : public std::runtime_error {
 public:
  explicit BudgetInvalidError(const std::string& what) : std::runtime_error(what) {}
};

/// The resilience margin alpha came out non-positive; the bound is undefined.
class NonPositiveMarginError : public std::runtime_error {
 public:
  NonPositiveMarginError(const std::string& what, double alpha)
      : std::runtime_error(what), alpha_(alpha) {}
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

/// Constant step size is at or above the admissible ceiling eta_bar.
class StepTooLargeError : public std::runtime_error {
 public:
  StepTooLargeError(const std::string& what, double eta, double eta_bar)
      : std::runtime_error(what), eta_(eta), eta_bar_(eta_bar) {}
  double eta() const { return eta_; }
  double eta_bar() const { return eta_bar_; }

 private:
  double eta_;
  double eta_bar_;
};

/// A stale-gradient buffer has fewer than n - r usable entries; the server
/// would keep waiting for more reports.
class StaleWaitError : public std::runtime_error {
 public:
  explicit StaleWaitError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rdo
