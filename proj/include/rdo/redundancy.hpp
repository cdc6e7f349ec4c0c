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

#include <vector>

#include "rdo/model.hpp"

namespace rdo {

/// Result of an exact redundancy computation for budgets (f, r).
struct RedundancyReport {
  int f = 0;
  int r = 0;
  double epsilon = 0.0;
  // Subset pair attaining the maximum. Empty when the quantifier is vacuous
  // (f = r = 0), in which case epsilon is 0.
  std::vector<int> witness_S;
  std::vector<int> witness_Shat;
};

double point_distance(const Vector& x, const Vector& y);

/// Tightest epsilon such that the problem satisfies the redundancy property
/// with budgets (f, r): the maximum of ||x_S - x_Shat|| over all subsets S of
/// size n - f and all strict subsets Shat of S with |Shat| >= n - 2f - r.
///
/// Deterministic: ties between witness pairs resolve to the lexicographically
/// smallest (S, Shat). Throws BudgetInvalidError when n <= 2f + r,
/// RankDeficientError (naming the subset) when some qualifying subset is rank
/// deficient, and ConfigError when the enumeration exceeds 10^7 pairs.
RedundancyReport compute_epsilon(const RegressionProblem& problem, int f, int r);

struct EpsilonCell {
  int f = 0;
  int r = 0;
  double epsilon = 0.0;
  bool valid = false;  // false when n <= 2f + r
};

/// compute_epsilon for every (f, r) in [0, f_max] x [0, r_max]. Cells whose
/// budgets violate n > 2f + r are flagged invalid instead of failing the run.
std::vector<EpsilonCell> epsilon_grid(const RegressionProblem& problem, int f_max, int r_max);

}  // namespace rdo
