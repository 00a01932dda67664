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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "superq/errors.hpp"
#include "superq/scenario.hpp"

namespace superq {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("superq_scenario_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseConfig, DefaultsForEveryScenario) {
  for (const std::string& id : scenario_ids()) {
    const ScenarioConfig cfg = parse_config(json{{"scenario", id}});
    EXPECT_EQ(cfg.scenario, id);
    EXPECT_EQ(cfg.parameters, scenario_defaults(id));
  }
  EXPECT_EQ(scenario_ids().size(), 6u);
}

TEST(ParseConfig, UnknownScenarioIsNamed) {
  EXPECT_NE(config_error({{"scenario", "fig-7"}}).find("fig-7"), std::string::npos);
}

TEST(ParseConfig, TooFewStepsIsNamed) {
  const std::string msg =
      config_error({{"scenario", "robustness"}, {"parameters", {{"n_steps", 1}}}});
  EXPECT_NE(msg.find("n_steps"), std::string::npos) << msg;
}

TEST(ParseConfig, EmptyAxesRejected) {
  EXPECT_NE(config_error({{"scenario", "robustness"},
                          {"parameters", {{"deltas", json::array()}}}}),
            "");
  EXPECT_NE(config_error({{"scenario", "robustness"},
                          {"parameters", {{"sigmas", json::array()}}}}),
            "");
}

TEST(ParseConfig, TypeAndKeyChecks) {
  EXPECT_NE(config_error({{"scenario", "guess-grid"},
                          {"parameters", {{"tau", "long"}}}})
                .find("tau"),
            std::string::npos);
  EXPECT_NE(config_error({{"scenario", "guess-grid"},
                          {"parameters", {{"bogus", 1}}}})
                .find("bogus"),
            std::string::npos);
  EXPECT_NE(config_error({{"scenario", "guess-grid"}, {"extra", 1}}), "");
  EXPECT_NE(config_error({{"scenario", "guess-grid"}, {"seed", -3}}), "");
  EXPECT_NE(config_error({{"scenario", "inversion-frames"},
                          {"parameters",
                           {{"pulses", json::array({{{"id", "x"}, {"A", 1.0}}})}}}}),
            "");
}

TEST(ParseConfig, OverridesMerge) {
  const ScenarioConfig cfg = parse_config(
      {{"scenario", "robustness"},
       {"seed", 11},
       {"parameters",
        {{"deltas", json::array({-1e3, 0.0, 1e3})},
         {"sigmas", {{"min", 0.5}, {"max", 1.5}, {"count", 3}}}}}});
  EXPECT_EQ(cfg.seed, 11u);
  EXPECT_EQ(cfg.parameters["deltas"].size(), 3u);
  EXPECT_EQ(cfg.parameters["tau"], 120e-6);
}

TEST(RunScenario, GuessGridIsDeterministic) {
  const json doc = {{"scenario", "guess-grid"},
                    {"parameters",
                     {{"n_steps", 20},
                      {"dw_a0", {{"min", -80e3}, {"max", 80e3}, {"count", 5}}},
                      {"dw_b0", {{"min", -80e3}, {"max", 80e3}, {"count", 5}}}}}};
  const fs::path a = scratch("grid_a"), b = scratch("grid_b");
  RunOptions opt;
  opt.output_dir = a;
  opt.svg = true;
  const RunReport ra = run_scenario(parse_config(doc), opt);
  opt.output_dir = b;
  opt.jobs = 2;
  const RunReport rb = run_scenario(parse_config(doc), opt);
  ASSERT_EQ(ra.files, rb.files);
  EXPECT_EQ(ra.files.back(), "manifest.json");
  for (const std::string& f : ra.files) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  const json manifest = json::parse(slurp(a / "manifest.json"));
  EXPECT_EQ(manifest["scenario"], "guess-grid");
  EXPECT_EQ(manifest["files"].size(), ra.files.size() - 1);
  EXPECT_EQ(manifest["results"]["degenerate_points"], 9);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(RunScenario, InversionFramesSummaries) {
  const fs::path dir = scratch("frames");
  RunOptions opt;
  opt.output_dir = dir;
  const json doc = {{"scenario", "inversion-frames"}};
  run_scenario(parse_config(doc), opt);
  const json m = json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(m["results"]["qs120"]["s"], 5);
  EXPECT_EQ(m["results"]["q1"]["s"], 2);
  EXPECT_TRUE(fs::exists(dir / "qs120_frame_10.csv"));
  EXPECT_TRUE(fs::exists(dir / "q1_summary.json"));
  fs::remove_all(dir);
}

TEST(RunScenario, SmallNumericalInversionWithSeed) {
  const json doc = {{"scenario", "numerical-inversion"},
                    {"seed", 3},
                    {"parameters",
                     {{"n_steps", 16},
                      {"stages", json::array({{{"objective_frame", 1}, {"rounds", 1}},
                                              {{"objective_frame", 2}, {"rounds", 1}}})},
                      {"reference_n_steps", 64},
                      {"taus", json::array({50e-6})}}}};
  const fs::path a = scratch("num_a"), b = scratch("num_b");
  RunOptions opt;
  opt.output_dir = a;
  const RunReport ra = run_scenario(parse_config(doc), opt);
  opt.output_dir = b;
  run_scenario(parse_config(doc), opt);
  for (const std::string& f : ra.files) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  EXPECT_TRUE(fs::exists(a / "stage2_search_log.jsonl"));
  fs::remove_all(a);
  fs::remove_all(b);
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(SUPERQ_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path& dir, const std::string& name,
                      const json& doc) {
  const fs::path p = dir / name;
  std::ofstream(p) << doc.dump();
  return p;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  const fs::path ok = write_config(
      dir, "ok.json",
      {{"scenario", "guess-grid"},
       {"parameters", {{"n_steps", 10}, {"dw_a0", json::array({64e3})},
                       {"dw_b0", json::array({-57e3})}}}});
  EXPECT_EQ(run_cli("validate " + ok.string()), 0);
  EXPECT_EQ(run_cli("run " + ok.string() + " --out " + (dir / "out").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "out" / "manifest.json"));

  const fs::path unknown = write_config(dir, "unknown.json", {{"scenario", "nope"}});
  EXPECT_EQ(run_cli("validate " + unknown.string()), 2);
  EXPECT_EQ(run_cli("run " + unknown.string()), 2);

  const fs::path empty = write_config(
      dir, "empty.json",
      {{"scenario", "robustness"}, {"parameters", {{"deltas", json::array()}}}});
  EXPECT_EQ(run_cli("run " + empty.string() + " --out " + (dir / "x").string()), 2);

  const fs::path weak = write_config(
      dir, "weak.json",
      {{"scenario", "entangler"}, {"parameters", {{"J", 1e-12}, {"n_steps", 8}}}});
  EXPECT_EQ(run_cli("run " + weak.string() + " --out " + (dir / "y").string()), 1);

  EXPECT_EQ(run_cli("run " + (dir / "missing.json").string()), 2);
  EXPECT_NE(run_cli(""), 0);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace superq
