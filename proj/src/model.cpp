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

#include "rdo/model.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "rdo/errors.hpp"

namespace rdo {

RegressionProblem::RegressionProblem(int d, std::vector<AgentData> agents)
    : d_(d), agents_(std::move(agents)) {
  if (d_ < 1) throw ConfigError("dimension must be >= 1");
  if (agents_.empty()) throw ConfigError("need at least one agent");
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const auto& a = agents_[i];
    if (a.rows.rows() < 1 || a.rows.cols() != d_ || a.responses.size() != a.rows.rows()) {
      throw ConfigError("agent " + std::to_string(i) + " has malformed data block");
    }
  }
}

Vector RegressionProblem::gradient(int agent, const Vector& x) const {
  const AgentData& a = agents_.at(agent);
  return 2.0 * a.rows.transpose() * (a.rows * x - a.responses);
}

double RegressionProblem::aggregate_cost(std::span<const int> subset, const Vector& x) const {
  if (subset.empty()) throw ConfigError("aggregate_cost: empty subset");
  double cost = 0.0;
  for (int i : subset) {
    const AgentData& a = agents_.at(i);
    cost += (a.responses - a.rows * x).squaredNorm();
  }
  return cost;
}

Matrix RegressionProblem::stack_rows(std::span<const int> subset) const {
  Eigen::Index total = 0;
  for (int i : subset) total += agents_.at(i).rows.rows();
  Matrix stacked(total, d_);
  std::vector<int> order(subset.begin(), subset.end());
  std::sort(order.begin(), order.end());
  Eigen::Index at = 0;
  for (int i : order) {
    const auto& block = agents_.at(i).rows;
    stacked.middleRows(at, block.rows()) = block;
    at += block.rows();
  }
  return stacked;
}

Vector RegressionProblem::stack_responses(std::span<const int> subset) const {
  Eigen::Index total = 0;
  for (int i : subset) total += agents_.at(i).responses.size();
  Vector stacked(total);
  std::vector<int> order(subset.begin(), subset.end());
  std::sort(order.begin(), order.end());
  Eigen::Index at = 0;
  for (int i : order) {
    const auto& b = agents_.at(i).responses;
    stacked.segment(at, b.size()) = b;
    at += b.size();
  }
  return stacked;
}

Vector RegressionProblem::least_squares_min(std::span<const int> subset) const {
  if (subset.empty()) throw ConfigError("least_squares_min: empty subset");
  return least_squares_solve(stack_rows(subset), stack_responses(subset));
}

AgentRoster AgentRoster::make(int n, int f, int r, FaultKind kind, double fault_std) {
  std::set<int> byz;
  for (int i = 0; i < f; ++i) byz.insert(i);
  return make_with_set(n, f, r, std::move(byz), kind, fault_std);
}

AgentRoster AgentRoster::make_with_set(int n, int f, int r, std::set<int> byzantine,
                                       FaultKind kind, double fault_std) {
  AgentRoster roster;
  roster.n = n;
  roster.f = f;
  roster.r = r;
  roster.byzantine = std::move(byzantine);
  roster.fault_kind = kind;
  roster.fault_std = fault_std;
  roster.validate();
  return roster;
}

void AgentRoster::validate() const {
  if (n < 1 || f < 0 || r < 0) throw BudgetInvalidError("roster requires n >= 1, f >= 0, r >= 0");
  if (n <= 2 * f + r) {
    throw BudgetInvalidError("need n > 2f + r, got n=" + std::to_string(n) + " f=" +
                             std::to_string(f) + " r=" + std::to_string(r));
  }
  if (static_cast<int>(byzantine.size()) > f) {
    throw BudgetInvalidError("Byzantine set larger than declared budget f");
  }
  for (int i : byzantine) {
    if (i < 0 || i >= n) throw BudgetInvalidError("Byzantine index out of range");
  }
}

std::vector<int> AgentRoster::honest_set() const {
  std::vector<int> honest;
  for (int i = 0; i < n; ++i) {
    if (!is_byzantine(i)) honest.push_back(i);
  }
  return honest;
}

BoxDomain BoxDomain::cube(int d, double lo, double hi) {
  BoxDomain box;
  box.lower = Vector::Constant(d, lo);
  box.upper = Vector::Constant(d, hi);
  box.validate();
  return box;
}

void BoxDomain::validate() const {
  if (lower.size() != upper.size() || lower.size() == 0) {
    throw ConfigError("domain bounds must be non-empty and of equal dimension");
  }
  if ((lower.array() > upper.array()).any()) {
    throw ConfigError("domain has lower > upper in some coordinate");
  }
}

bool BoxDomain::contains(const Vector& x, double tol) const {
  return (x.array() >= lower.array() - tol).all() && (x.array() <= upper.array() + tol).all();
}

Vector BoxDomain::project(const Vector& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

RegressionProblem load_problem_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty dataset file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header.back() != "agent_id" || header[header.size() - 2] != "b") {
    throw ConfigError("dataset header must be a_1,...,a_d,b,agent_id in " + path);
  }
  const int d = static_cast<int>(header.size()) - 2;

  struct Row {
    std::vector<double> a;
    double b;
    long agent;
  };
  std::vector<Row> rows;
  long min_agent = std::numeric_limits<long>::max();
  long max_agent = std::numeric_limits<long>::min();
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != d + 2) {
      throw ConfigError("bad field count in dataset row: " + line);
    }
    Row row;
    try {
      for (int j = 0; j < d; ++j) row.a.push_back(std::stod(fields[j]));
      row.b = std::stod(fields[d]);
      row.agent = std::stol(fields[d + 1]);
    } catch (const std::exception&) {
      throw ConfigError("non-numeric value in dataset row: " + line);
    }
    min_agent = std::min(min_agent, row.agent);
    max_agent = std::max(max_agent, row.agent);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("dataset has no data rows: " + path);
  if (min_agent != 0 && min_agent != 1) throw ConfigError("agent ids must start at 0 or 1");

  const int n = static_cast<int>(max_agent - min_agent + 1);
  std::vector<std::vector<Row>> per_agent(n);
  for (auto& row : rows) per_agent[row.agent - min_agent].push_back(std::move(row));

  std::vector<AgentData> agents;
  for (int i = 0; i < n; ++i) {
    if (per_agent[i].empty()) throw ConfigError("agent " + std::to_string(i) + " owns no rows");
    const int k = static_cast<int>(per_agent[i].size());
    AgentData data{Matrix(k, d), Vector(k)};
    for (int row = 0; row < k; ++row) {
      for (int j = 0; j < d; ++j) data.rows(row, j) = per_agent[i][row].a[j];
      data.responses[row] = per_agent[i][row].b;
    }
    agents.push_back(std::move(data));
  }
  return RegressionProblem(d, std::move(agents));
}

void save_problem_csv(const RegressionProblem& problem, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write dataset file: " + path);
  out.precision(17);
  for (int j = 1; j <= problem.d(); ++j) out << "a_" << j << ",";
  out << "b,agent_id\n";
  for (int i = 0; i < problem.n(); ++i) {
    const auto& agent = problem.agent(i);
    for (Eigen::Index row = 0; row < agent.rows.rows(); ++row) {
      for (int j = 0; j < problem.d(); ++j) out << agent.rows(row, j) << ",";
      out << agent.responses[row] << "," << i << "\n";
    }
  }
}

}  // namespace rdo
