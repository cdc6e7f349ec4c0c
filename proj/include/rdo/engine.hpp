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
#include <vector>

#include "rdo/aggregation.hpp"
#include "rdo/model.hpp"
#include "rdo/rng.hpp"

namespace rdo {

/// Decides which r agents are slow in each iteration.
struct StragglerModel {
  enum class Kind { FixedSet, UniformRandom, RoundRobin };
  Kind kind = Kind::UniformRandom;
  std::vector<int> fixed;  // FixedSet only, size r

  static StragglerModel uniform_random() { return {Kind::UniformRandom, {}}; }
  static StragglerModel round_robin() { return {Kind::RoundRobin, {}}; }
  static StragglerModel fixed_set(std::vector<int> indices) {
    return {Kind::FixedSet, std::move(indices)};
  }

  /// r distinct straggler indices for iteration t, sorted ascending.
  std::set<int> select(int n, int r, int t, std::uint64_t seed) const;
};

struct StepSchedule {
  enum class Kind { Harmonic, Constant };
  Kind kind = Kind::Harmonic;
  double a = 1.5;  // Harmonic: eta_t = a/(t+1); Constant: eta_t = a

  static StepSchedule harmonic(double a) { return {Kind::Harmonic, a}; }
  static StepSchedule constant(double eta) { return {Kind::Constant, eta}; }

  double eta(int t) const { return kind == Kind::Harmonic ? a / (t + 1) : a; }
};

/// Additive zero-mean perturbation of honest gradients with
/// E||perturbation||^2 = sigma^2 (per-coordinate std sigma/sqrt(d)).
struct NoiseModel {
  enum class Kind { None, Gaussian };
  Kind kind = Kind::None;
  double sigma = 0.0;

  static NoiseModel none() { return {Kind::None, 0.0}; }
  static NoiseModel gaussian(double sigma) { return {Kind::Gaussian, sigma}; }
};

struct RunConfig {
  RegressionProblem problem;
  AgentRoster roster;
  BoxDomain domain;
  GarSpec gar;
  StragglerModel stragglers;
  StepSchedule schedule;
  NoiseModel noise;
  Vector x0;
  int iterations = 500;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError / BudgetInvalidError
};

struct TrajectoryPoint {
  int t = 0;
  Vector x;
  double dist_to_xh = 0.0;
  double honest_cost = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;  // length T + 1
  Vector x_h;
  const Vector& x_out() const { return points.back().x; }
};

Vector project_box(const Vector& x, const BoxDomain& domain);

/// Byzantine report for one round: GradientReverse negates the true gradient;
/// RandomGaussian draws a fresh i.i.d. N(0, std^2) vector per coordinate.
Vector inject_fault(FaultKind kind, double fault_std, const Vector& true_gradient, Rng& rng);

/// Runs the full protocol for config.iterations rounds. Deterministic: a pure
/// function of the config including its seed.
Trajectory run(const RunConfig& config);

struct MonteCarloMse {
  double mse = 0.0;
  double std_error = 0.0;
};

/// Mean squared distance to target at the given iteration across seeds
/// (config.seed is overridden per run). Requires at least two seeds.
MonteCarloMse monte_carlo_mse(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
                              const Vector& target, int at_iteration);

}  // namespace rdo
