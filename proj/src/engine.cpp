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

#include "rdo/engine.hpp"

#include <algorithm>
#include <cmath>

#include "rdo/errors.hpp"

namespace rdo {

std::set<int> StragglerModel::select(int n, int r, int t, std::uint64_t seed) const {
  if (r < 0 || r >= n) throw ConfigError("straggler count must satisfy 0 <= r < n");
  std::set<int> slow;
  switch (kind) {
    case Kind::FixedSet:
      if (static_cast<int>(fixed.size()) != r) {
        throw ConfigError("FixedSet straggler model needs exactly r indices");
      }
      slow.insert(fixed.begin(), fixed.end());
      if (static_cast<int>(slow.size()) != r) throw ConfigError("duplicate straggler index");
      for (int i : slow) {
        if (i < 0 || i >= n) throw ConfigError("straggler index out of range");
      }
      break;
    case Kind::UniformRandom: {
      Rng rng = Rng::stream(seed, Stream::Straggler, 0, static_cast<std::uint64_t>(t));
      while (static_cast<int>(slow.size()) < r) {
        slow.insert(static_cast<int>(rng.uniform_below(n)));
      }
      break;
    }
    case Kind::RoundRobin:
      for (int j = 0; j < r; ++j) {
        slow.insert((static_cast<long long>(t) * r + j) % n);
      }
      break;
  }
  return slow;
}

void RunConfig::validate() const {
  roster.validate();
  domain.validate();
  if (roster.n != problem.n()) throw ConfigError("roster agent count differs from problem");
  if (domain.d() != problem.d()) throw ConfigError("domain dimension differs from problem");
  if (x0.size() != problem.d()) throw ConfigError("x0 dimension differs from problem");
  if (!domain.contains(x0)) throw ConfigError("x0 lies outside the domain");
  if (iterations < 0) throw ConfigError("iteration count must be non-negative");
  if (schedule.a <= 0.0) throw ConfigError("step schedule parameter must be positive");
  if (noise.kind == NoiseModel::Kind::Gaussian && noise.sigma < 0.0) {
    throw ConfigError("noise sigma must be non-negative");
  }
  if (gar.kind == GarSpec::Kind::StaleSum && gar.tau < 0) {
    throw ConfigError("staleness window tau must be non-negative");
  }
  if (stragglers.kind == StragglerModel::Kind::FixedSet &&
      static_cast<int>(stragglers.fixed.size()) != roster.r) {
    throw ConfigError("FixedSet straggler model needs exactly r indices");
  }
}

Vector project_box(const Vector& x, const BoxDomain& domain) { return domain.project(x); }

Vector inject_fault(FaultKind kind, double fault_std, const Vector& true_gradient, Rng& rng) {
  switch (kind) {
    case FaultKind::GradientReverse:
      return -true_gradient;
    case FaultKind::RandomGaussian:
      return rng.normal_vector(static_cast<int>(true_gradient.size()), fault_std);
  }
  throw ConfigError("unknown fault kind");
}

namespace {

/// The gradient agent i reports at iteration t when the estimate is x:
/// honest full gradient, plus noise if configured, or the Byzantine report.
Vector agent_report(const RunConfig& config, int agent, int t, const Vector& x) {
  Vector g = config.problem.gradient(agent, x);
  if (config.roster.is_byzantine(agent)) {
    Rng rng = Rng::stream(config.seed, Stream::Fault, agent, static_cast<std::uint64_t>(t));
    return inject_fault(config.roster.fault_kind, config.roster.fault_std, g, rng);
  }
  if (config.noise.kind == NoiseModel::Kind::Gaussian && config.noise.sigma > 0.0) {
    Rng rng = Rng::stream(config.seed, Stream::Noise, agent, static_cast<std::uint64_t>(t));
    const int d = config.problem.d();
    g += rng.normal_vector(d, config.noise.sigma / std::sqrt(static_cast<double>(d)));
  }
  return g;
}

}  // namespace

Trajectory run(const RunConfig& config) {
  config.validate();
  const int n = config.roster.n;
  const int r = config.roster.r;
  const int d = config.problem.d();

  Trajectory traj;
  const auto honest = config.roster.honest_set();
  traj.x_h = config.problem.least_squares_min(honest);

  std::vector<Vector> history;  // x^0 .. x^t, for delayed stale reports
  Vector x = config.x0;

  auto record = [&](int t) {
    traj.points.push_back({t, x, (x - traj.x_h).norm(), config.problem.aggregate_cost(honest, x)});
    history.push_back(x);
  };
  record(0);

  StaleBuffer buffer(n, config.gar.tau);
  for (int t = 0; t < config.iterations; ++t) {
    const std::set<int> slow = config.stragglers.select(n, r, t, config.seed);
    Vector direction(d);

    if (config.gar.kind == GarSpec::Kind::StaleSum) {
      buffer.advance_to(t);
      for (int i = 0; i < n; ++i) {
        if (!slow.count(i)) {
          buffer.deliver(i, agent_report(config, i, t, x), t);
          continue;
        }
        if (config.gar.tau == 0) continue;  // report arrives after the window
        Rng rng = Rng::stream(config.seed, Stream::StaleAge, i, static_cast<std::uint64_t>(t));
        const int age = 1 + static_cast<int>(rng.uniform_below(config.gar.tau));
        const int ts = t - age;
        if (ts >= 0) buffer.deliver(i, agent_report(config, i, ts, history[ts]), ts);
      }
      direction = stale_aggregate(buffer, n - r);
    } else {
      std::vector<Vector> received;
      received.reserve(n - r);
      for (int i = 0; i < n; ++i) {
        if (!slow.count(i)) received.push_back(agent_report(config, i, t, x));
      }
      direction = config.gar.kind == GarSpec::Kind::Cge
                      ? cge_filter(received, config.roster.f)
                      : sum_fastest(received, n - r);
    }

    x = config.domain.project(x - config.schedule.eta(t) * direction);
    record(t + 1);
  }
  return traj;
}

MonteCarloMse monte_carlo_mse(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
                              const Vector& target, int at_iteration) {
  if (seeds.size() < 2) throw ConfigError("monte_carlo_mse needs at least two seeds");
  if (at_iteration < 0 || at_iteration > config.iterations) {
    throw ConfigError("monte_carlo_mse: checkpoint beyond the trajectory");
  }
  std::vector<double> sq;
  sq.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    RunConfig c = config;
    c.seed = seed;
    const Trajectory traj = run(c);
    sq.push_back((traj.points[at_iteration].x - target).squaredNorm());
  }
  MonteCarloMse out;
  for (double v : sq) out.mse += v;
  out.mse /= static_cast<double>(sq.size());
  double var = 0.0;
  for (double v : sq) var += (v - out.mse) * (v - out.mse);
  var /= static_cast<double>(sq.size() - 1);
  out.std_error = std::sqrt(var / static_cast<double>(sq.size()));
  return out;
}

}  // namespace rdo
