/* Copyright 2026 The superq Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Scenario runner behind the command-line tool. A config file names one
// scenario and overrides some of its parameters:
//
//   {"scenario": "robustness", "seed": 3, "output_dir": "out/rob",
//    "parameters": {"tau": 120e-6, "sigmas": {"min": 0, "max": 3, "count": 31}}}
//
// Unknown keys and values of the wrong JSON type are rejected. Axis-valued
// parameters take either an explicit array or a {min, max, count} range.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace superq {

struct ScenarioConfig {
  std::string scenario;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  nlohmann::ordered_json parameters;  // defaults merged with overrides
};

const std::vector<std::string>& scenario_ids();

// Default parameters of a scenario; throws ConfigError for unknown ids.
nlohmann::ordered_json scenario_defaults(const std::string& id);

// Parses, merges defaults and checks every parameter without computing.
// Throws ConfigError naming the offending field.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::filesystem::path& path);

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool svg = false;
};

struct RunReport {
  std::filesystem::path output_dir;
  std::vector<std::string> files;  // relative to output_dir, manifest last
};

// Runs the scenario and writes manifest.json after every other file.
RunReport run_scenario(ScenarioConfig cfg, const RunOptions& options);

}  // namespace superq
