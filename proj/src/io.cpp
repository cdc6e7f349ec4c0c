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

#include "rdo/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rdo/errors.hpp"
#include "rdo/fixtures.hpp"

namespace rdo {

using nlohmann::json;

namespace {

void reject_unknown_fields(const json& obj, const std::vector<std::string>& allowed,
                           const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown config field: " + path + key);
    }
  }
}

Vector parse_vector(const json& arr, const std::string& path) {
  if (!arr.is_array() || arr.empty()) throw ConfigError(path + " must be a non-empty array");
  Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ConfigError(path + " must hold numbers");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

AgentRoster parse_roster(const json& j, int n) {
  reject_unknown_fields(j, {"f", "r", "byzantine", "fault_kind", "fault_std"}, "roster.");
  const int f = j.value("f", 0);
  const int r = j.value("r", 0);
  FaultKind kind = FaultKind::GradientReverse;
  if (j.contains("fault_kind")) {
    const std::string s = j["fault_kind"].get<std::string>();
    if (s == "gradient-reverse") {
      kind = FaultKind::GradientReverse;
    } else if (s == "random-gaussian") {
      kind = FaultKind::RandomGaussian;
    } else {
      throw ConfigError("roster.fault_kind must be gradient-reverse or random-gaussian");
    }
  }
  const double fault_std = j.value("fault_std", 200.0);
  if (j.contains("byzantine")) {
    std::set<int> byz;
    for (const auto& v : j["byzantine"]) byz.insert(v.get<int>());
    return AgentRoster::make_with_set(n, f, r, std::move(byz), kind, fault_std);
  }
  return AgentRoster::make(n, f, r, kind, fault_std);
}

GarSpec parse_gar(const json& j) {
  reject_unknown_fields(j, {"kind", "tau"}, "gar.");
  const std::string kind = j.value("kind", "sum");
  if (kind == "sum") return GarSpec::sum_fastest();
  if (kind == "cge") return GarSpec::cge();
  if (kind == "stale") return GarSpec::stale_sum(j.value("tau", 0));
  throw ConfigError("gar.kind must be sum, cge, or stale");
}

StragglerModel parse_stragglers(const json& j) {
  reject_unknown_fields(j, {"kind", "fixed"}, "stragglers.");
  const std::string kind = j.value("kind", "uniform-random");
  if (kind == "uniform-random") return StragglerModel::uniform_random();
  if (kind == "round-robin") return StragglerModel::round_robin();
  if (kind == "fixed-set") {
    std::vector<int> fixed;
    for (const auto& v : j.value("fixed", json::array())) fixed.push_back(v.get<int>());
    return StragglerModel::fixed_set(std::move(fixed));
  }
  throw ConfigError("stragglers.kind must be uniform-random, round-robin, or fixed-set");
}

StepSchedule parse_schedule(const json& j) {
  reject_unknown_fields(j, {"kind", "a", "eta"}, "schedule.");
  const std::string kind = j.value("kind", "harmonic");
  if (kind == "harmonic") return StepSchedule::harmonic(j.value("a", 1.5));
  if (kind == "constant") {
    if (!j.contains("eta")) throw ConfigError("schedule.eta required for constant schedule");
    return StepSchedule::constant(j["eta"].get<double>());
  }
  throw ConfigError("schedule.kind must be harmonic or constant");
}

NoiseModel parse_noise(const json& j) {
  reject_unknown_fields(j, {"kind", "sigma"}, "noise.");
  const std::string kind = j.value("kind", "none");
  if (kind == "none") return NoiseModel::none();
  if (kind == "gaussian") return NoiseModel::gaussian(j.value("sigma", 0.0));
  throw ConfigError("noise.kind must be none or gaussian");
}

BoxDomain parse_domain(const json& j, int d) {
  reject_unknown_fields(j, {"lower", "upper", "cube"}, "domain.");
  if (j.contains("cube")) {
    const auto& c = j["cube"];
    if (!c.is_array() || c.size() != 2) throw ConfigError("domain.cube must be [lo, hi]");
    return BoxDomain::cube(d, c[0].get<double>(), c[1].get<double>());
  }
  BoxDomain box;
  box.lower = parse_vector(j.at("lower"), "domain.lower");
  box.upper = parse_vector(j.at("upper"), "domain.upper");
  box.validate();
  return box;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown_fields(j,
                        {"schema", "dataset", "fixture", "roster", "domain", "gar", "stragglers",
                         "schedule", "noise", "x0", "iterations", "seed"},
                        "");
  if (!j.contains("schema") || j["schema"] != 1) {
    throw ConfigError("config requires \"schema\": 1");
  }
  if (j.contains("dataset") == j.contains("fixture")) {
    throw ConfigError("config needs exactly one of dataset or fixture");
  }

  RegressionProblem problem = [&] {
    if (j.contains("dataset")) return load_problem_csv(j["dataset"].get<std::string>());
    const std::string name = j["fixture"].get<std::string>();
    if (name != "paper-regression") throw ConfigError("unknown fixture: " + name);
    return paper_regression();
  }();

  const int d = problem.d();
  const int n = problem.n();
  RunConfig config{
      std::move(problem),
      parse_roster(j.value("roster", json::object()), n),
      parse_domain(j.at("domain"), d),
      parse_gar(j.value("gar", json::object())),
      parse_stragglers(j.value("stragglers", json::object())),
      parse_schedule(j.value("schedule", json::object())),
      parse_noise(j.value("noise", json::object())),
      j.contains("x0") ? parse_vector(j["x0"], "x0") : Vector::Zero(d).eval(),
      j.value("iterations", 500),
      j.value("seed", std::uint64_t{0}),
  };
  config.validate();
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw ConfigError("cannot move " + tmp + " into place");
  }
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open CSV file: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw ConfigError("empty CSV file: " + path);
  return rows;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& trajectory) {
  std::ostringstream out;
  const int d = static_cast<int>(trajectory.x_h.size());
  out << "t";
  for (int j = 1; j <= d; ++j) out << ",x_" << j;
  out << ",dist_to_xH,honest_cost\r\n";
  for (const auto& p : trajectory.points) {
    out << p.t;
    for (int j = 0; j < d; ++j) out << "," << format_double(p.x[j]);
    out << "," << format_double(p.dist_to_xh) << "," << format_double(p.honest_cost) << "\r\n";
  }
  write_text_atomic(path, out.str());
}

std::vector<TrajectoryPoint> parse_trajectory_csv(const std::string& path) {
  const auto rows = read_csv(path);
  const auto& header = rows.front();
  if (header.size() < 4 || header.front() != "t" || header.back() != "honest_cost") {
    throw ConfigError("not a trajectory CSV: " + path);
  }
  const int d = static_cast<int>(header.size()) - 3;
  std::vector<TrajectoryPoint> points;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != header.size()) throw ConfigError("bad trajectory row in " + path);
    TrajectoryPoint p;
    p.t = std::stoi(f[0]);
    p.x = Vector(d);
    for (int j = 0; j < d; ++j) p.x[j] = std::stod(f[1 + j]);
    p.dist_to_xh = std::stod(f[1 + d]);
    p.honest_cost = std::stod(f[2 + d]);
    points.push_back(std::move(p));
  }
  return points;
}

void write_epsilon_grid_csv(const std::string& path, const std::vector<EpsilonCell>& grid) {
  std::ostringstream out;
  out << "f,r,epsilon,valid\r\n";
  for (const auto& cell : grid) {
    out << cell.f << "," << cell.r << "," << format_double(cell.epsilon) << ","
        << (cell.valid ? "true" : "false") << "\r\n";
  }
  write_text_atomic(path, out.str());
}

std::vector<EpsilonCell> parse_epsilon_grid_csv(const std::string& path) {
  const auto rows = read_csv(path);
  if (rows.front() != std::vector<std::string>{"f", "r", "epsilon", "valid"}) {
    throw ConfigError("not an epsilon grid CSV: " + path);
  }
  std::vector<EpsilonCell> grid;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != 4) throw ConfigError("bad epsilon grid row in " + path);
    grid.push_back({std::stoi(f[0]), std::stoi(f[1]), std::stod(f[2]), f[3] == "true"});
  }
  return grid;
}

std::string run_summary_json(const RunConfig& config, const Trajectory& trajectory) {
  json summary;
  summary["schema"] = 1;
  summary["iterations"] = config.iterations;
  summary["seed"] = config.seed;
  summary["x_out"] = std::vector<double>(trajectory.x_out().begin(), trajectory.x_out().end());
  summary["x_h"] = std::vector<double>(trajectory.x_h.begin(), trajectory.x_h.end());
  summary["dist"] = trajectory.points.back().dist_to_xh;
  summary["honest_cost"] = trajectory.points.back().honest_cost;

  json bounds = json::object();
  try {
    const double mu = lipschitz_mu(config.problem);
    const double gamma = convexity_gamma(config.problem, config.roster.f);
    const double epsilon =
        compute_epsilon(config.problem, config.roster.f, config.roster.r).epsilon;
    bounds["mu"] = mu;
    bounds["gamma"] = gamma;
    bounds["epsilon"] = epsilon;
    const auto det =
        bound_deterministic(config.roster.n, config.roster.f, config.roster.r, mu, gamma, epsilon);
    bounds["alpha"] = det.alpha;
    bounds["D"] = det.D;
  } catch (const NonPositiveMarginError& e) {
    bounds["alpha"] = e.alpha();
    bounds["note"] = "resilience margin is not positive; no finite radius";
  } catch (const std::exception& e) {
    bounds["note"] = e.what();
  }
  summary["bounds"] = bounds;
  return summary.dump(2) + "\n";
}

}  // namespace rdo
