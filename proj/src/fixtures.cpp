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

#include "rdo/fixtures.hpp"

#include <array>

#include "rdo/errors.hpp"

namespace rdo {

RegressionProblem paper_regression() {
  static const std::array<std::array<double, 2>, 10> rows = {{
      {1.0, 0.0},
      {0.8, 0.5},
      {0.5, 0.8},
      {0.0, 1.0},
      {-0.5, 0.8},
      {-0.8, 0.5},
      {0.3, -0.7},
      {0.7, 0.3},
      {0.3, 0.7},
      {0.7, -0.3},
  }};
  static const std::array<double, 10> responses = {
      0.9108, 1.3349, 1.3376, 1.0033, 0.2142,
      -0.3615, -0.3974, 0.9967, 1.0052, 0.3947,
  };
  std::vector<AgentData> agents;
  for (int i = 0; i < 10; ++i) {
    AgentData a{Matrix(1, 2), Vector(1)};
    a.rows(0, 0) = rows[i][0];
    a.rows(0, 1) = rows[i][1];
    a.responses[0] = responses[i];
    agents.push_back(std::move(a));
  }
  return RegressionProblem(2, std::move(agents));
}

namespace reference {

Vector honest_minimizer(int f) {
  Vector x(2);
  switch (f) {
    case 0: x << 1.0117, 0.9883; break;
    case 1: x << 1.0460, 0.9883; break;
    case 2: x << 1.0445, 0.9876; break;
    default: throw ConfigError("reference honest minimizer only tabulated for f in {0,1,2}");
  }
  return x;
}

double error_radius(int f, int r) {
  static const double table[3][3] = {
      {0.0, 0.207, 0.385},
      {0.369, 0.670, 0.957},
      {1.251, 1.748, 2.467},
  };
  if (f < 0 || f > 2 || r < 0 || r > 2) {
    throw ConfigError("reference error radius only tabulated for f, r in {0,1,2}");
  }
  return table[f][r];
}

double gamma_of(int f) {
  switch (f) {
    case 0: return 0.788;
    case 1: return 0.588;
    case 2: return 0.439;
    default: throw ConfigError("reference gamma only tabulated for f in {0,1,2}");
  }
}

}  // namespace reference

}  // namespace rdo
