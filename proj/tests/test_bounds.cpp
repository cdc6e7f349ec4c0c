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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rdo/bounds.hpp"
#include "rdo/errors.hpp"
#include "rdo/fixtures.hpp"
#include "rdo/redundancy.hpp"
#include "rdo/rng.hpp"

using namespace rdo;

namespace {

RegressionProblem random_problem(Rng& rng, int n, int d) {
  std::vector<AgentData> agents;
  for (int i = 0; i < n; ++i) {
    AgentData a{Matrix(d, d), Vector(d)};
    for (int p = 0; p < d; ++p) {
      for (int q = 0; q < d; ++q) a.rows(p, q) = rng.normal();
      a.responses[p] = rng.normal();
    }
    agents.push_back(std::move(a));
  }
  return RegressionProblem(d, std::move(agents));
}

}  // namespace

TEST_CASE("lipschitz constant") {
  CHECK(lipschitz_mu(paper_regression()) == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<AgentData> one;
  AgentData a{Matrix(1, 2), Vector(1)};
  a.rows << 3.0, 0.0;
  a.responses << 1.0;
  one.push_back(a);
  const RegressionProblem single(2, std::move(one));
  CHECK(lipschitz_mu(single) == doctest::Approx(2.0 * 9.0));

  // Scaling all rows by s multiplies mu by s^2.
  std::vector<AgentData> scaled_agents;
  const auto base = paper_regression();
  for (int i = 0; i < base.n(); ++i) {
    AgentData s = base.agent(i);
    s.rows *= 2.0;
    scaled_agents.push_back(std::move(s));
  }
  const RegressionProblem scaled(2, std::move(scaled_agents));
  CHECK(lipschitz_mu(scaled) == doctest::Approx(4.0 * lipschitz_mu(base)));
}

TEST_CASE("strong convexity constant matches published values") {
  const auto problem = paper_regression();
  CHECK(convexity_gamma(problem, 0) == doctest::Approx(0.788).epsilon(1e-3));
  CHECK(convexity_gamma(problem, 1) == doctest::Approx(0.588).epsilon(1e-3));
  CHECK(convexity_gamma(problem, 2) == doctest::Approx(0.439).epsilon(1e-3));
}

TEST_CASE("gamma is non-increasing in f and bounded by mu") {
  const auto problem = paper_regression();
  double prev = convexity_gamma(problem, 0);
  for (int f = 1; f <= 3; ++f) {
    const double g = convexity_gamma(problem, f);
    CHECK(g <= prev + 1e-15);
    prev = g;
  }

  Rng rng(1717);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_below(4));
    const int d = 1 + static_cast<int>(rng.uniform_below(3));
    const auto p = random_problem(rng, n, d);
    const int f = static_cast<int>(rng.uniform_below(2));
    CHECK(convexity_gamma(p, f) <= lipschitz_mu(p) + 1e-12);
  }
}

TEST_CASE("deterministic bound") {
  // r = 0 zeroes the fault-free radius.
  const auto b00 = bound_deterministic(10, 0, 0, 2.0, 0.788, 0.0);
  CHECK(b00.alpha == doctest::Approx(1.0));
  CHECK(b00.D == 0.0);

  // Doubling epsilon doubles D.
  const auto b1 = bound_deterministic(10, 1, 0, 2.0, 0.588, 0.04);
  const auto b2 = bound_deterministic(10, 1, 0, 2.0, 0.588, 0.08);
  CHECK(b2.D == doctest::Approx(2.0 * b1.D));

  // Non-positive margin carries the computed alpha.
  try {
    bound_deterministic(10, 2, 0, 2.0, 0.439, 0.09);
    FAIL("expected NonPositiveMarginError");
  } catch (const NonPositiveMarginError& e) {
    CHECK(e.alpha() == doctest::Approx(8.0 / 10.0 - (4.0 / 0.439) * (2.0 / 10.0)));
  }

  CHECK_THROWS_AS(bound_deterministic(10, 4, 2, 2.0, 0.5, 0.1), BudgetInvalidError);
  CHECK_THROWS_AS(bound_deterministic(10, 0, 1, -1.0, 0.5, 0.1), ConfigError);
}

TEST_CASE("deterministic bound monotonicity grid") {
  // Within the alpha > 0 region, D grows with epsilon, f, r, mu and shrinks
  // as gamma grows.
  const int n = 40;
  auto d_of = [&](int f, int r, double mu, double gamma, double eps) {
    return bound_deterministic(n, f, r, mu, gamma, eps).D;
  };
  for (double eps : {0.01, 0.02, 0.04}) {
    CHECK(d_of(1, 1, 2.0, 1.9, eps) <= d_of(1, 1, 2.0, 1.9, eps * 2) + 1e-15);
  }
  CHECK(d_of(1, 0, 2.0, 1.9, 0.05) <= d_of(2, 0, 2.0, 1.9, 0.05));
  CHECK(d_of(1, 0, 2.0, 1.9, 0.05) <= d_of(1, 1, 2.0, 1.9, 0.05));
  CHECK(d_of(1, 1, 1.5, 1.9, 0.05) <= d_of(1, 1, 1.8, 1.9, 0.05));
  CHECK(d_of(1, 1, 2.0, 1.99, 0.05) <= d_of(1, 1, 2.0, 1.9, 0.05));
}

TEST_CASE("stale bound") {
  const double mu = 2.0, gamma = 0.788, eps = 0.0343061;
  const auto det = bound_deterministic(10, 0, 1, mu, gamma, eps);
  const auto tau0 = bound_stale(10, 1, mu, gamma, eps, 0, 1.5, 1415.63);
  CHECK(tau0.D == doctest::Approx(det.D).epsilon(1e-12));
  CHECK(tau0.G == doctest::Approx(10.0 * 2.0 * (20.0 * eps + 1415.63)));

  // Zero redundancy gap: zero radius for any window.
  CHECK(bound_stale(10, 1, mu, gamma, 0.0, 5, 1.5, 1415.63).D == 0.0);

  // The radius grows with the window.
  double prev = tau0.D;
  for (int tau = 1; tau <= 3; ++tau) {
    const double d = bound_stale(10, 1, mu, gamma, eps, tau, 1.5, 1415.63).D;
    CHECK(d > prev);
    prev = d;
  }
}

TEST_CASE("domain radius") {
  Vector origin = Vector::Zero(2);
  CHECK(domain_radius(BoxDomain::cube(2, -1.0, 1.0), origin) == doctest::Approx(std::sqrt(2.0)));

  Vector corner(2);
  corner << 1.0, 1.0;
  CHECK(domain_radius(BoxDomain::cube(2, -1.0, 1.0), corner) ==
        doctest::Approx(std::sqrt(8.0)));

  Vector x_h(2);
  x_h << 1.0117, 0.9883;
  CHECK(domain_radius(BoxDomain::cube(2, -1000.0, 1000.0), x_h) ==
        doctest::Approx(std::sqrt(1001.0117 * 1001.0117 + 1000.9883 * 1000.9883)));

  Vector outside(2);
  outside << 2.0, 0.0;
  CHECK_THROWS_AS(domain_radius(BoxDomain::cube(2, -1.0, 1.0), outside), ConfigError);
}

TEST_CASE("stochastic parameters") {
  // Zero epsilon and sigma give a zero error floor.
  const auto clean = stochastic_params(10, 1, 0, 2.0, 0.588, 1e-4, 0.0, 0.0);
  CHECK(clean.M_bar == 0.0);
  CHECK(clean.rho > 0.0);
  CHECK(clean.rho < 1.0);

  // f = 0 set, benchmark-like numbers.
  const auto p = stochastic_params(10, 0, 1, 2.0, 0.788, 0.0049, 0.0343, 0.1);
  CHECK(p.alpha == doctest::Approx(1.0 - 0.1 * 2.0 / 0.788));
  CHECK(p.eta_bar == doctest::Approx(2.0 * 10.0 * 0.788 * p.alpha / (3.0 * 100.0 * 4.0)));
  CHECK(p.rho > 0.0);
  CHECK(p.rho < 1.0);
  CHECK(p.M_bar > 0.0);

  // rho attains its minimum at eta_bar / 2 over a sampled grid.
  const double eta_star = p.eta_bar / 2.0;
  const double rho_star = stochastic_params(10, 0, 1, 2.0, 0.788, eta_star, 0.0343, 0.1).rho;
  for (int k = 1; k <= 19; ++k) {
    const double eta = p.eta_bar * k / 20.0;
    const double rho = stochastic_params(10, 0, 1, 2.0, 0.788, eta, 0.0343, 0.1).rho;
    CHECK(rho_star <= rho + 1e-12);
  }

  try {
    stochastic_params(10, 0, 1, 2.0, 0.788, 1.0, 0.0343, 0.1);
    FAIL("expected StepTooLargeError");
  } catch (const StepTooLargeError& e) {
    CHECK(e.eta() == 1.0);
    CHECK(e.eta_bar() == doctest::Approx(p.eta_bar));
  }

  // The general set needs n >= 2f + 3r.
  CHECK_THROWS_AS(stochastic_params(10, 1, 3, 2.0, 0.588, 1e-4, 0.01, 0.1), BudgetInvalidError);
  // ... while f = 0 does not: n = 10, r = 3 is fine when alpha stays positive.
  CHECK_NOTHROW(stochastic_params(10, 0, 3, 2.0, 2.0, 1e-4, 0.01, 0.1));
}

TEST_CASE("dstar table") {
  // Identical agents: every cell collapses to zero.
  std::vector<AgentData> agents;
  for (int i = 0; i < 6; ++i) {
    AgentData a{Matrix(2, 2), Vector(2)};
    a.rows << 1.0, 0.0, 0.0, 1.0;
    a.responses << 1.0, 2.0;
    agents.push_back(a);
  }
  const RegressionProblem same(2, std::move(agents));
  for (const auto& cell : dstar_table(same, 1, 1)) {
    REQUIRE(cell.valid);
    CHECK(cell.epsilon == doctest::Approx(0.0));
    CHECK(cell.D == doctest::Approx(0.0));
  }

  // Benchmark dataset: the pipeline flags cells whose margin is not
  // positive instead of aborting.
  const auto table = dstar_table(paper_regression(), 2, 2);
  REQUIRE(table.size() == 9);
  for (const auto& cell : table) {
    if (cell.valid) {
      CHECK(cell.alpha > 0.0);
      CHECK(cell.D >= 0.0);
    } else {
      CHECK(cell.reason == "resilience margin is not positive");
      CHECK(cell.alpha < 0.0);
    }
    if (cell.f == 0 && cell.r == 0) {
      CHECK(cell.valid);
      CHECK(cell.D == 0.0);
    }
  }
}
