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

#include <string>
#include <vector>

#include "rdo/model.hpp"

namespace rdo {

/// mu = 2 * max_i lambda_max(A_i^T A_i), the smoothness constant shared by
/// every agent cost. Throws ConfigError when all rows are zero.
double lipschitz_mu(const RegressionProblem& problem);

/// Strong convexity constant of the averaged aggregate cost, minimized over
/// every honest candidate set: gamma = (2/n) * min over subsets S with
/// |S| >= n - f of lambda_min(A_S^T A_S). Throws RankDeficientError when a
/// qualifying subset is singular.
double convexity_gamma(const RegressionProblem& problem, int f);

struct DeterministicBound {
  double alpha = 0.0;
  double D = 0.0;
};

/// Resilience margin and error radius of the full-gradient convergence
/// guarantee. Dispatches between the f = 0 and f >= 1 formula sets. Throws
/// NonPositiveMarginError when alpha <= 0.
DeterministicBound bound_deterministic(int n, int f, int r, double mu, double gamma,
                                       double epsilon);

struct StaleBound {
  double alpha = 0.0;
  double D = 0.0;
  double G = 0.0;
};

/// Fault-free stale-gradient bound: G = n*mu*(2n*epsilon + Gamma) and
/// D = mu*(2r + tau*eta0*G)*epsilon / (alpha*gamma). With tau = 0 the radius
/// coincides with bound_deterministic's f = 0 value.
StaleBound bound_stale(int n, int r, double mu, double gamma, double epsilon, int tau,
                       double eta0, double Gamma);

/// Gamma = max_{x in W} ||x - x_H||, attained at a corner of the box.
/// Throws ConfigError when x_H lies outside the domain.
double domain_radius(const BoxDomain& domain, const Vector& x_h);

struct StochasticParams {
  double alpha = 0.0;
  double eta_bar = 0.0;
  double rho = 0.0;
  double M_bar = 0.0;
};

/// Constant-step stochastic parameters (step ceiling, contraction rate, error
/// floor). Uses the tighter f = 0 formula set when f = 0; the general set
/// additionally requires n >= 2f + 3r. Throws NonPositiveMarginError,
/// BudgetInvalidError, or StepTooLargeError when eta >= eta_bar.
StochasticParams stochastic_params(int n, int f, int r, double mu, double gamma, double eta,
                                   double epsilon, double sigma);

struct DstarCell {
  int f = 0;
  int r = 0;
  bool valid = false;
  double epsilon = 0.0;
  double alpha = 0.0;
  double D = 0.0;
  std::string reason;  // set when invalid
};

/// Per-cell pipeline compute_epsilon -> convexity_gamma -> bound_deterministic
/// over f in [0, f_max], r in [0, r_max]. Cells with n <= 2f + r or a
/// non-positive margin are flagged instead of aborting the table.
std::vector<DstarCell> dstar_table(const RegressionProblem& problem, int f_max, int r_max);

}  // namespace rdo
