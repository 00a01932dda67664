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

// superq run <config.json> [--out DIR] [--seed INT] [--jobs INT] [--svg]
// superq validate <config.json>
//
// Exit codes: 0 success, 1 computation error, 2 configuration error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "superq/errors.hpp"
#include "superq/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Superadiabatic pulse design toolkit"};
  app.require_subcommand(1);

  std::string run_config;
  std::string out_dir;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool svg = false;
  CLI::App* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", run_config, "scenario config (JSON)")->required();
  CLI::Option* out_opt =
      run->add_option("--out", out_dir, "output directory");
  CLI::Option* seed_opt = run->add_option("--seed", seed, "RNG seed");
  run->add_option("--jobs", jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  run->add_flag("--svg", svg, "also render SVG plots");

  std::string check_config;
  CLI::App* validate =
      app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", check_config, "scenario config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) {
      const superq::ScenarioConfig cfg = superq::load_config(check_config);
      nlohmann::ordered_json dump{{"scenario", cfg.scenario},
                                  {"seed", cfg.seed},
                                  {"output_dir", cfg.output_dir.string()},
                                  {"parameters", cfg.parameters}};
      std::cout << "ok\n" << dump.dump(2) << '\n';
      return 0;
    }
    superq::RunOptions options;
    if (*out_opt) options.output_dir = out_dir;
    if (*seed_opt) options.seed = seed;
    options.jobs = jobs;
    options.svg = svg;
    const superq::RunReport report =
        superq::run_scenario(superq::load_config(run_config), options);
    for (const std::string& f : report.files) {
      std::cout << (report.output_dir / f).string() << '\n';
    }
    return 0;
  } catch (const superq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
