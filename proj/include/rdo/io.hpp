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

#include "rdo/bounds.hpp"
#include "rdo/engine.hpp"
#include "rdo/redundancy.hpp"

namespace rdo {

/// Parses a schema-1 JSON experiment config. Unknown fields are rejected with
/// their field path. The dataset comes from config["dataset"] (CSV path) or
/// config["fixture"] = "paper-regression".
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

/// Writes rows atomically (temp file + rename). All CSV output uses CRLF
/// line endings and 17 significant digits, so identical inputs produce
/// byte-identical files.
void write_trajectory_csv(const std::string& path, const Trajectory& trajectory);
void write_epsilon_grid_csv(const std::string& path, const std::vector<EpsilonCell>& grid);

/// Round-trip parsers for the CSV formats above.
std::vector<TrajectoryPoint> parse_trajectory_csv(const std::string& path);
std::vector<EpsilonCell> parse_epsilon_grid_csv(const std::string& path);

/// Summary of one run as a JSON document string.
std::string run_summary_json(const RunConfig& config, const Trajectory& trajectory);

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace rdo
