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

#include "rdo/aggregation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rdo/errors.hpp"

namespace rdo {

Vector sum_fastest(const std::vector<Vector>& gradients, int expected_count) {
  if (static_cast<int>(gradients.size()) != expected_count) {
    throw ConfigError("sum_fastest expected " + std::to_string(expected_count) +
                      " gradients, got " + std::to_string(gradients.size()));
  }
  Vector sum = Vector::Zero(gradients.front().size());
  for (const Vector& g : gradients) sum += g;
  return sum;
}

Vector cge_filter(const std::vector<Vector>& gradients, int f) {
  const int m = static_cast<int>(gradients.size());
  if (f < 0 || m <= f) {
    throw ConfigError("cge_filter requires m > f >= 0, got m=" + std::to_string(m) +
                      " f=" + std::to_string(f));
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return gradients[a].norm() < gradients[b].norm();
  });
  Vector sum = Vector::Zero(gradients.front().size());
  for (int l = 0; l < m - f; ++l) sum += gradients[order[l]];
  return sum;
}

StaleBuffer::StaleBuffer(int n, int tau) : entries_(n), tau_(tau) {
  if (n < 1) throw ConfigError("StaleBuffer needs at least one agent");
  if (tau < 0) throw ConfigError("staleness window tau must be non-negative");
}

void StaleBuffer::advance_to(int t) {
  if (t < now_) throw ConfigError("StaleBuffer cannot move backwards in time");
  now_ = t;
}

void StaleBuffer::deliver(int agent, const Vector& gradient, int timestamp) {
  if (agent < 0 || agent >= n()) throw ConfigError("StaleBuffer: agent index out of range");
  if (timestamp > now_) throw ConfigError("StaleBuffer: report from the future");
  auto& slot = entries_[agent];
  if (slot && slot->timestamp >= timestamp) return;
  slot = Entry{gradient, timestamp};
}

std::vector<int> StaleBuffer::fresh_agents() const {
  std::vector<int> fresh;
  for (int i = 0; i < n(); ++i) {
    if (entries_[i] && entries_[i]->timestamp >= now_ - tau_) fresh.push_back(i);
  }
  return fresh;
}

Vector stale_aggregate(const StaleBuffer& buffer, int min_count) {
  const auto fresh = buffer.fresh_agents();
  if (static_cast<int>(fresh.size()) < min_count) {
    throw StaleWaitError("stale buffer holds " + std::to_string(fresh.size()) +
                         " usable reports, need " + std::to_string(min_count) +
                         "; server keeps waiting");
  }
  Vector sum;
  for (int i : fresh) {
    const Vector& g = buffer.entries_[i]->gradient;
    if (sum.size() == 0) sum = Vector::Zero(g.size());
    sum += g;
  }
  return sum;
}

}  // namespace rdo
