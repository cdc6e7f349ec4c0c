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

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rdo/linalg.hpp"

namespace rdo {

/// One agent's share of the regression data: a k_i x d block of rows and the
/// matching responses. The agent's cost is Q_i(x) = ||b - A x||^2.
struct AgentData {
  Matrix rows;       // k_i x d
  Vector responses;  // k_i
};

/// The distributed linear-regression instance. Immutable after construction;
/// all operations on it are pure.
class RegressionProblem {
 public:
  RegressionProblem(int d, std::vector<AgentData> agents);

  int n() const { return static_cast<int>(agents_.size()); }
  int d() const { return d_; }
  const AgentData& agent(int i) const { return agents_.at(i); }

  /// Closed-form gradient of Q_i at x: 2 A_i^T (A_i x - b_i).
  Vector gradient(int agent, const Vector& x) const;

  /// Sum of squared residuals over the subset.
  double aggregate_cost(std::span<const int> subset, const Vector& x) const;

  /// Unique minimizer of the subset's aggregate cost.
  /// Throws RankDeficientError when the stacked rows have rank < d.
  Vector least_squares_min(std::span<const int> subset) const;

  /// Rows of all subset members stacked in increasing agent order.
  Matrix stack_rows(std::span<const int> subset) const;
  Vector stack_responses(std::span<const int> subset) const;

 private:
  int d_;
  std::vector<AgentData> agents_;
};

enum class FaultKind { GradientReverse, RandomGaussian };

/// Which agents are Byzantine and how they misbehave. Validates n > 2f + r.
struct AgentRoster {
  int n = 0;
  int f = 0;
  int r = 0;
  std::set<int> byzantine;  // defaults to {0, ..., f-1}
  FaultKind fault_kind = FaultKind::GradientReverse;
  double fault_std = 200.0;  // per-coordinate std for RandomGaussian

  static AgentRoster make(int n, int f, int r,
                          FaultKind kind = FaultKind::GradientReverse,
                          double fault_std = 200.0);
  static AgentRoster make_with_set(int n, int f, int r, std::set<int> byzantine,
                                   FaultKind kind = FaultKind::GradientReverse,
                                   double fault_std = 200.0);

  bool is_byzantine(int agent) const { return byzantine.count(agent) > 0; }

  /// Complement of the Byzantine set, in increasing order.
  std::vector<int> honest_set() const;

  void validate() const;  // throws BudgetInvalidError
};

/// Axis-aligned box W = [lower, upper], the compact feasible set.
struct BoxDomain {
  Vector lower;
  Vector upper;

  static BoxDomain cube(int d, double lo, double hi);

  int d() const { return static_cast<int>(lower.size()); }
  bool contains(const Vector& x, double tol = 0.0) const;
  Vector project(const Vector& x) const;  // coordinate-wise clamp
  void validate() const;                  // throws ConfigError when empty
};

/// Parse a dataset CSV with header a_1,...,a_d,b,agent_id (agent ids 0-based
/// or 1-based contiguous). One row per data point.
RegressionProblem load_problem_csv(const std::string& path);

/// Write the problem back in the same CSV layout.
void save_problem_csv(const RegressionProblem& problem, const std::string& path);

}  // namespace rdo
