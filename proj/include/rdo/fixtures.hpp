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

#include "rdo/model.hpp"

namespace rdo {

/// Built-in linear regression benchmark: n = 10 agents, d = 2, one data row
/// per agent, responses generated as b = A (1,1)^T + noise.
RegressionProblem paper_regression();

/// Published reference values for the benchmark, used as test baselines.
namespace reference {

/// Honest-set minimizer when agents {0,...,f-1} are faulty, f in {0,1,2}.
Vector honest_minimizer(int f);

/// Published error-radius table, rows f = 0..2, columns r = 0..2. These are
/// reported alongside the benchmark results; they are not recomputed here.
double error_radius(int f, int r);

/// Smoothness and convexity constants reported for the benchmark.
inline constexpr double kMu = 2.0;
double gamma_of(int f);  // f in {0,1,2}

}  // namespace reference

}  // namespace rdo
