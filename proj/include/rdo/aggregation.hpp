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

#include <optional>
#include <vector>

#include "rdo/linalg.hpp"

namespace rdo {

/// Which gradient aggregation rule the server applies each round.
struct GarSpec {
  enum class Kind { SumFastest, Cge, StaleSum };
  Kind kind = Kind::SumFastest;
  int tau = 0;  // staleness window, StaleSum only

  static GarSpec sum_fastest() { return {Kind::SumFastest, 0}; }
  static GarSpec cge() { return {Kind::Cge, 0}; }
  static GarSpec stale_sum(int tau) { return {Kind::StaleSum, tau}; }
};

/// Coordinate-wise sum of the received gradients. Throws ConfigError when the
/// list size differs from expected_count.
Vector sum_fastest(const std::vector<Vector>& gradients, int expected_count);

/// Sorts the m inputs by Euclidean norm (stable: ties keep input order) and
/// sums the m - f smallest. Throws ConfigError when m <= f.
Vector cge_filter(const std::vector<Vector>& gradients, int f);

/// Per-agent buffer of the most recently delivered gradient and its
/// timestamp. Mutated only by the engine loop.
class StaleBuffer {
 public:
  StaleBuffer(int n, int tau);

  int n() const { return static_cast<int>(entries_.size()); }
  int tau() const { return tau_; }
  int now() const { return now_; }

  void advance_to(int t);
  /// Stores (gradient, timestamp) for the agent unless a fresher report is
  /// already held. Timestamps may not exceed the current iteration.
  void deliver(int agent, const Vector& gradient, int timestamp);

  /// Agents whose stored timestamp lies in [now - tau, now], in index order.
  std::vector<int> fresh_agents() const;

 private:
  struct Entry {
    Vector gradient;
    int timestamp = -1;
  };
  std::vector<std::optional<Entry>> entries_;
  int tau_;
  int now_ = 0;

  friend Vector stale_aggregate(const StaleBuffer& buffer, int min_count);
};

/// Sum of every buffered gradient whose timestamp is within the staleness
/// window. Throws StaleWaitError when fewer than min_count agents qualify.
Vector stale_aggregate(const StaleBuffer& buffer, int min_count);

}  // namespace rdo
