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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sloscale/cluster.hpp"
#include "sloscale/controllers.hpp"
#include "sloscale/workload.hpp"

namespace sloscale {

inline constexpr int kScenarioSchema = 1;

// Everything one experiment needs. Every controller in `controllers` runs
// against the same workload, service model and initial cluster.
struct ScenarioConfig {
  std::string name;
  double horizon = 3600.0;
  double tick = 1.0;
  std::uint64_t seed = 1;
  WorkloadSpec workload;
  ServiceModel service;
  ClusterConfig cluster;
  ControllerConfig controller;
  std::vector<ControllerKind> controllers{ControllerKind::kDefaultHpa, ControllerKind::kTunedHpa,
                                          ControllerKind::kSloAware};
  int repeats = 1;

  // Throws ConfigError naming the first offending field.
  void validate() const;
  std::size_t tick_count() const;
  std::size_t ticks_per_decision() const;
};

// Parse and validate. Unknown keys are rejected at every level.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const ScenarioConfig& scenario);

}  // namespace sloscale
