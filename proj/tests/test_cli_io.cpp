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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rdo/engine.hpp"
#include "rdo/errors.hpp"
#include "rdo/io.hpp"
#include "rdo/redundancy.hpp"

using namespace rdo;

namespace {

const char* kBaseConfig = R"({
  "schema": 1,
  "fixture": "paper-regression",
  "roster": {"f": 1, "r": 1, "fault_kind": "gradient-reverse"},
  "domain": {"cube": [-1000, 1000]},
  "gar": {"kind": "cge"},
  "stragglers": {"kind": "uniform-random"},
  "schedule": {"kind": "harmonic", "a": 1.5},
  "noise": {"kind": "none"},
  "x0": [0, 0],
  "iterations": 50,
  "seed": 7
})";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig config = parse_run_config(kBaseConfig);
  CHECK(config.roster.f == 1);
  CHECK(config.roster.r == 1);
  CHECK(config.gar.kind == GarSpec::Kind::Cge);
  CHECK(config.iterations == 50);
  CHECK(config.seed == 7);
  CHECK(config.problem.n() == 10);
}

TEST_CASE("config rejection paths") {
  using json = nlohmann::json;
  auto mutate = [&](auto fn) {
    json j = json::parse(kBaseConfig);
    fn(j);
    return j.dump();
  };

  // Unknown fields are named.
  try {
    parse_run_config(mutate([](json& j) { j["extra_knob"] = 1; }));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("extra_knob") != std::string::npos);
  }
  try {
    parse_run_config(mutate([](json& j) { j["roster"]["colour"] = "red"; }));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("roster.colour") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_run_config(mutate([](json& j) { j.erase("schema"); })), ConfigError);
  CHECK_THROWS_AS(parse_run_config(mutate([](json& j) { j["schema"] = 2; })), ConfigError);
  CHECK_THROWS_AS(parse_run_config(mutate([](json& j) { j["dataset"] = "x.csv"; })), ConfigError);
  CHECK_THROWS_AS(parse_run_config(mutate([](json& j) { j.erase("fixture"); })), ConfigError);
  CHECK_THROWS_AS(parse_run_config(mutate([](json& j) { j["x0"] = {5000.0, 0.0}; })), ConfigError);
  CHECK_THROWS_AS(parse_run_config(mutate([](json& j) { j["roster"]["f"] = 5; })),
                  BudgetInvalidError);
  CHECK_THROWS_AS(parse_run_config("{ not json"), ConfigError);
}

TEST_CASE("trajectory CSV round trip") {
  const RunConfig config = parse_run_config(kBaseConfig);
  const Trajectory traj = run(config);
  const std::string path = "io_traj.csv";
  write_trajectory_csv(path, traj);
  const auto points = parse_trajectory_csv(path);
  REQUIRE(points.size() == traj.points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(points[i].t == traj.points[i].t);
    CHECK(points[i].x == traj.points[i].x);  // exact through %.17g
    CHECK(points[i].dist_to_xh == traj.points[i].dist_to_xh);
    CHECK(points[i].honest_cost == traj.points[i].honest_cost);
  }
  std::remove(path.c_str());
}

TEST_CASE("epsilon grid CSV round trip") {
  const auto grid = epsilon_grid(parse_run_config(kBaseConfig).problem, 2, 2);
  const std::string path = "io_grid.csv";
  write_epsilon_grid_csv(path, grid);
  const auto parsed = parse_epsilon_grid_csv(path);
  REQUIRE(parsed.size() == grid.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].f == grid[i].f);
    CHECK(parsed[i].r == grid[i].r);
    CHECK(parsed[i].epsilon == grid[i].epsilon);
    CHECK(parsed[i].valid == grid[i].valid);
  }
  std::remove(path.c_str());
}

TEST_CASE("identical runs produce byte-identical CSV output") {
  const RunConfig config = parse_run_config(kBaseConfig);
  write_trajectory_csv("io_a.csv", run(config));
  write_trajectory_csv("io_b.csv", run(config));
  CHECK(read_file("io_a.csv") == read_file("io_b.csv"));
  std::remove("io_a.csv");
  std::remove("io_b.csv");
}

TEST_CASE("run summary JSON") {
  const RunConfig config = parse_run_config(kBaseConfig);
  const auto traj = run(config);
  const auto summary = nlohmann::json::parse(run_summary_json(config, traj));
  CHECK(summary["schema"] == 1);
  CHECK(summary["iterations"] == 50);
  CHECK(summary["seed"] == 7);
  REQUIRE(summary["x_out"].size() == 2);
  CHECK(summary["x_out"][0].get<double>() == traj.x_out()[0]);
  CHECK(summary["bounds"]["mu"].get<double>() == doctest::Approx(2.0));
  // f = 1, r = 1 on this dataset has a negative margin; the summary reports
  // it alongside a note instead of a radius.
  CHECK(summary["bounds"]["alpha"].get<double>() < 0.0);
  CHECK(summary["bounds"].contains("note"));
}
