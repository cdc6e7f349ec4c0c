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

#include "rdo/bounds.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "rdo/errors.hpp"
#include "rdo/redundancy.hpp"

namespace rdo {

double lipschitz_mu(const RegressionProblem& problem) {
  double mu = 0.0;
  for (int i = 0; i < problem.n(); ++i) {
    mu = std::max(mu, 2.0 * max_eigenvalue_ata(problem.agent(i).rows));
  }
  if (mu <= 0.0) throw ConfigError("lipschitz_mu: every data row is zero");
  return mu;
}

namespace {

double min_lambda_over_subsets(const RegressionProblem& problem, int keep, std::vector<int>& subset,
                               int next, int picked) {
  const int n = problem.n();
  if (picked == keep) {
    const double lmin = min_eigenvalue_ata(problem.stack_rows(subset));
    if (lmin <= 0.0) {
      throw RankDeficientError("convexity_gamma: a candidate honest set of size " +
                               std::to_string(keep) + " is rank deficient");
    }
    return lmin;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = next; i <= n - (keep - picked); ++i) {
    subset[picked] = i;
    best = std::min(best, min_lambda_over_subsets(problem, keep, subset, i + 1, picked + 1));
  }
  return best;
}

}  // namespace

double convexity_gamma(const RegressionProblem& problem, int f) {
  const int n = problem.n();
  if (f < 0 || n - f < 1) throw ConfigError("convexity_gamma: need 0 <= f < n");
  // lambda_min only shrinks when rows are removed, so the minimum over all
  // subsets of size >= n - f is attained at size exactly n - f.
  std::vector<int> subset(n - f);
  const double lmin = min_lambda_over_subsets(problem, n - f, subset, 0, 0);
  return 2.0 * lmin / n;
}

DeterministicBound bound_deterministic(int n, int f, int r, double mu, double gamma,
                                       double epsilon) {
  if (n < 1 || f < 0 || r < 0 || n <= 2 * f + r) {
    throw BudgetInvalidError("bound_deterministic requires n > 2f + r");
  }
  if (mu <= 0.0 || gamma <= 0.0 || epsilon < 0.0) {
    throw ConfigError("bound_deterministic: mu, gamma must be positive and epsilon >= 0");
  }
  DeterministicBound b;
  if (f == 0) {
    b.alpha = 1.0 - (static_cast<double>(r) / n) * (mu / gamma);
    if (b.alpha <= 0.0) {
      throw NonPositiveMarginError("resilience margin is not positive", b.alpha);
    }
    b.D = 2.0 * r * mu * epsilon / (b.alpha * gamma);
  } else {
    b.alpha = static_cast<double>(n - f) / (n - r) -
              (2.0 * mu / gamma) * (static_cast<double>(f + r) / (n - r));
    if (b.alpha <= 0.0) {
      throw NonPositiveMarginError("resilience margin is not positive", b.alpha);
    }
    b.D = 4.0 * mu * (f + r) * epsilon / (b.alpha * gamma);
  }
  return b;
}

StaleBound bound_stale(int n, int r, double mu, double gamma, double epsilon, int tau, double eta0,
                       double Gamma) {
  if (n < 1 || r < 0 || n <= r) throw BudgetInvalidError("bound_stale requires 0 <= r < n");
  if (tau < 0 || eta0 <= 0.0 || Gamma < 0.0 || mu <= 0.0 || gamma <= 0.0 || epsilon < 0.0) {
    throw ConfigError("bound_stale: invalid parameter");
  }
  StaleBound b;
  b.alpha = 1.0 - (static_cast<double>(r) / n) * (mu / gamma);
  if (b.alpha <= 0.0) {
    throw NonPositiveMarginError("resilience margin is not positive", b.alpha);
  }
  b.G = n * mu * (2.0 * n * epsilon + Gamma);
  b.D = mu * (2.0 * r + tau * eta0 * b.G) * epsilon / (b.alpha * gamma);
  return b;
}

double domain_radius(const BoxDomain& domain, const Vector& x_h) {
  domain.validate();
  if (x_h.size() != domain.lower.size()) throw ConfigError("domain_radius: dimension mismatch");
  if (!domain.contains(x_h)) throw ConfigError("domain_radius: reference point outside domain");
  double sq = 0.0;
  for (Eigen::Index j = 0; j < x_h.size(); ++j) {
    const double far = std::max(std::abs(domain.lower[j] - x_h[j]),
                                std::abs(domain.upper[j] - x_h[j]));
    sq += far * far;
  }
  return std::sqrt(sq);
}

StochasticParams stochastic_params(int n, int f, int r, double mu, double gamma, double eta,
                                   double epsilon, double sigma) {
  if (n < 1 || f < 0 || r < 0 || n <= 2 * f + r) {
    throw BudgetInvalidError("stochastic_params requires n > 2f + r");
  }
  if (mu <= 0.0 || gamma <= 0.0 || eta <= 0.0 || epsilon < 0.0 || sigma < 0.0) {
    throw ConfigError("stochastic_params: invalid parameter");
  }
  StochasticParams p;
  const double nd = n, fd = f, rd = r;
  if (f == 0) {
    p.alpha = 1.0 - (rd / nd) * (mu / gamma);
    if (p.alpha <= 0.0) {
      throw NonPositiveMarginError("resilience margin is not positive", p.alpha);
    }
    p.eta_bar = 2.0 * nd * gamma * p.alpha / (3.0 * nd * nd * mu * mu);
    if (eta >= p.eta_bar) {
      throw StepTooLargeError("step size reaches the admissible ceiling", eta, p.eta_bar);
    }
    p.rho = 1.0 - 2.0 * (nd * gamma - rd * mu) * eta + 3.0 * nd * nd * eta * eta * mu * mu;
    const double a = rd + nd * nd * eta * mu;
    p.M_bar = 4.0 * (a * a + std::pow(nd, 4) * eta * eta * mu * mu) * epsilon * epsilon +
              (nd * nd * eta * eta +
               std::pow(rd / (nd * mu), 2) * std::pow(std::sqrt(nd - 1.0) + 1.0, 2)) *
                  sigma * sigma;
  } else {
    if (n < 2 * f + 3 * r) {
      throw BudgetInvalidError("stochastic_params with f >= 1 requires n >= 2f + 3r");
    }
    const double m = nd - rd;
    p.alpha = (nd - fd) / (nd - rd) - (2.0 * mu / gamma) * ((fd + rd) / (nd - rd));
    if (p.alpha <= 0.0) {
      throw NonPositiveMarginError("resilience margin is not positive", p.alpha);
    }
    p.eta_bar = 2.0 * (nd - rd) * gamma * p.alpha /
                (std::pow(nd - fd, 2) * mu * mu + 2.0 * std::pow(nd - rd, 2) * mu * mu);
    if (eta >= p.eta_bar) {
      throw StepTooLargeError("step size reaches the admissible ceiling", eta, p.eta_bar);
    }
    p.rho = 1.0 - 2.0 * (nd - fd) * eta * gamma + 4.0 * (fd + rd) * eta * mu +
            std::pow(nd - fd, 2) * eta * eta * mu * mu +
            2.0 * std::pow(nd - rd, 2) * eta * eta * mu * mu;
    const double a = 2.0 * (fd + rd) + std::pow(nd - fd, 2) * eta * mu;
    p.M_bar = 4.0 *
                  (a * a + m * m * std::pow(nd - fd, 2) * eta * eta * mu * mu) * epsilon *
                  epsilon +
              (4.0 * std::pow((fd + rd) / (m * mu), 2) *
                   std::pow(std::sqrt(nd - fd - 1.0) + 1.0, 2) +
               std::pow(nd - fd, 2) * eta * eta) *
                  sigma * sigma;
  }
  return p;
}

std::vector<DstarCell> dstar_table(const RegressionProblem& problem, int f_max, int r_max) {
  std::vector<DstarCell> table;
  const double mu = lipschitz_mu(problem);
  for (int f = 0; f <= f_max; ++f) {
    for (int r = 0; r <= r_max; ++r) {
      DstarCell cell;
      cell.f = f;
      cell.r = r;
      if (problem.n() <= 2 * f + r) {
        cell.reason = "budgets violate n > 2f + r";
        table.push_back(cell);
        continue;
      }
      cell.epsilon = compute_epsilon(problem, f, r).epsilon;
      try {
        const auto b = bound_deterministic(problem.n(), f, r, mu, convexity_gamma(problem, f),
                                           cell.epsilon);
        cell.alpha = b.alpha;
        cell.D = b.D;
        cell.valid = true;
      } catch (const NonPositiveMarginError& e) {
        cell.alpha = e.alpha();
        cell.reason = "resilience margin is not positive";
      }
      table.push_back(cell);
    }
  }
  return table;
}

}  // namespace rdo
