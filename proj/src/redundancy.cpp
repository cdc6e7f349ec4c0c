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

#include "rdo/redundancy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "rdo/errors.hpp"

namespace rdo {

double point_distance(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw ConfigError("point_distance: dimension mismatch");
  return (x - y).norm();
}

namespace {

std::string subset_to_string(const std::vector<int>& subset) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < subset.size(); ++i) os << (i ? "," : "") << subset[i];
  os << "}";
  return os.str();
}

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

/// Advances a k-combination of {0..n-1} to its lexicographic successor.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Memoizes subset minimizers by bitmask; every problem handled here has
/// n <= 63 agents (guaranteed by the enumeration cap).
class MinimizerCache {
 public:
  explicit MinimizerCache(const RegressionProblem& problem) : problem_(problem) {}

  const Vector& get(const std::vector<int>& subset) {
    std::uint64_t mask = 0;
    for (int i : subset) mask |= std::uint64_t{1} << i;
    auto it = cache_.find(mask);
    if (it != cache_.end()) return it->second;
    try {
      return cache_.emplace(mask, problem_.least_squares_min(subset)).first->second;
    } catch (const RankDeficientError&) {
      throw RankDeficientError("subset " + subset_to_string(subset) +
                               " is rank deficient; its minimizer is not unique");
    }
  }

 private:
  const RegressionProblem& problem_;
  std::unordered_map<std::uint64_t, Vector> cache_;
};

}  // namespace

RedundancyReport compute_epsilon(const RegressionProblem& problem, int f, int r) {
  const int n = problem.n();
  if (f < 0 || r < 0 || n <= 2 * f + r) {
    throw BudgetInvalidError("compute_epsilon requires n > 2f + r, got n=" + std::to_string(n) +
                             " f=" + std::to_string(f) + " r=" + std::to_string(r));
  }
  if (n > 63 || binomial(n, n - f) * std::pow(2.0, f + r) > 1e7) {
    throw ConfigError("compute_epsilon: enumeration over C(n,n-f)*2^(f+r) pairs exceeds 10^7");
  }

  RedundancyReport report;
  report.f = f;
  report.r = r;

  const int big = n - f;        // |S|
  const int small_min = n - 2 * f - r;  // lower bound on |Shat|
  if (small_min >= big) return report;  // vacuous: no strict subset qualifies

  MinimizerCache cache(problem);
  std::vector<int> S(big);
  for (int i = 0; i < big; ++i) S[i] = i;
  do {
    const Vector& x_S = cache.get(S);
    // Shat ranges over strict subsets of S; equivalently, drop a non-empty
    // removal set of size at most f + r.
    const int max_drop = big - small_min;
    for (int drop = 1; drop <= max_drop; ++drop) {
      std::vector<int> removal(drop);
      for (int i = 0; i < drop; ++i) removal[i] = i;
      do {
        std::vector<int> shat;
        shat.reserve(big - drop);
        std::size_t at = 0;
        for (int i = 0; i < big; ++i) {
          if (at < removal.size() && removal[at] == i) {
            ++at;
          } else {
            shat.push_back(S[i]);
          }
        }
        const double dist = point_distance(x_S, cache.get(shat));
        const bool better =
            dist > report.epsilon ||
            (dist == report.epsilon &&
             (report.witness_S.empty() ||
              std::tie(S, shat) < std::tie(report.witness_S, report.witness_Shat)));
        if (better) {
          report.epsilon = dist;
          report.witness_S = S;
          report.witness_Shat = shat;
        }
      } while (next_combination(removal, big));
    }
  } while (next_combination(S, n));
  return report;
}

std::vector<EpsilonCell> epsilon_grid(const RegressionProblem& problem, int f_max, int r_max) {
  std::vector<EpsilonCell> grid;
  for (int f = 0; f <= f_max; ++f) {
    for (int r = 0; r <= r_max; ++r) {
      EpsilonCell cell;
      cell.f = f;
      cell.r = r;
      if (problem.n() > 2 * f + r) {
        cell.valid = true;
        cell.epsilon = compute_epsilon(problem, f, r).epsilon;
      }
      grid.push_back(cell);
    }
  }
  return grid;
}

}  // namespace rdo
