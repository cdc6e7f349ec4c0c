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

#include <cmath>
#include <cstdint>
#include <random>

#include "rdo/linalg.hpp"

namespace rdo {

// Seedable, portable random streams. Every random decision in a run is drawn
// from a stream keyed by (seed, purpose, agent, iteration), so two runs with
// the same config and seed are bit-identical, and changing the aggregation
// rule does not perturb the straggler draws.
//
// mt19937_64 output is pinned by the C++ standard; uniform and normal
// variates are derived by hand (not via std::*_distribution, whose mapping
// is implementation-defined).

enum class Stream : std::uint64_t {
  Straggler = 1,
  Fault = 2,
  Noise = 3,
  StaleAge = 4,
  General = 5,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2) + splitmix64(b)));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Substream for a given purpose and (agent, iteration) pair.
  static Rng stream(std::uint64_t seed, Stream id, std::uint64_t a = 0, std::uint64_t b = 0) {
    return Rng(mix(mix(mix(seed, static_cast<std::uint64_t>(id)), a), b));
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in (0, 1]; never returns 0 so it is safe under log().
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  /// Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  Vector normal_vector(int d, double stddev) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = stddev * normal();
    return v;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rdo
