// Copyright 2026 The sloscale Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sloscale/error.hpp"
#include "sloscale/experiment.hpp"
#include "sloscale/scenario.hpp"
#include "sloscale/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::vector<sloscale::ControllerKind> parse_list(const std::string& list) {
  std::vector<sloscale::ControllerKind> kinds;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) kinds.push_back(sloscale::parse_controller_kind(item));
  }
  if (kinds.empty()) throw sloscale::ConfigError("controllers", "empty controller list");
  return kinds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SLO- and cost-aware autoscaling simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::string controllers;
  std::uint64_t seed = 0;
  int repeats = 0;
  bool quiet = false;

  auto* run_cmd = app.add_subcommand("run", "Run every controller on a scenario and write reports");
  run_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
  auto* controllers_opt =
      run_cmd->add_option("--controllers", controllers, "Comma-separated controller list");
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the scenario seed");
  auto* repeats_opt =
      run_cmd->add_option("--repeats", repeats, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--quiet", quiet, "Suppress per-run progress lines");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file and print it with defaults");
  validate_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();

  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (app.got_subcommand("version")) {
      std::cout << "sloscale " << SLOSCALE_VERSION << '\n';
      return kExitOk;
    }
    if (app.got_subcommand("validate")) {
      const sloscale::ScenarioConfig scenario = sloscale::load_scenario(scenario_path);
      std::cout << sloscale::to_json(scenario).dump(2) << '\n';
      return kExitOk;
    }

    const sloscale::ScenarioConfig scenario = sloscale::load_scenario(scenario_path);
    sloscale::ExperimentOptions options;
    options.out_dir = out_dir;
    if (*controllers_opt) options.controllers = parse_list(controllers);
    if (*seed_opt) options.seed = seed;
    if (*repeats_opt) options.repeats = repeats;
    if (!quiet) options.log = &std::cerr;
    const sloscale::ExperimentResult result = sloscale::run_experiment(scenario, options);
    if (!quiet && result.comparison) {
      std::cout << sloscale::comparison_csv(*result.comparison);
    }
    return kExitOk;
  } catch (const sloscale::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const sloscale::InvariantError& e) {
    std::cerr << "internal error: simulation invariant breached: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
