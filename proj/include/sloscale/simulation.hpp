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

#include <optional>
#include <string>
#include <vector>

#include "sloscale/controllers.hpp"
#include "sloscale/scenario.hpp"

namespace sloscale {

// State at the end of one tick, after any actuation on that tick.
struct TraceRow {
  double t = 0.0;
  double arrivals = 0.0;
  int ready = 0;
  int starting = 0;
  int pending = 0;
  int nodes_active = 0;
  double queue = 0.0;
  double latency = 0.0;
  double utilization = 0.0;
  std::optional<int> action;       // new replica target applied on this tick
  std::optional<int> decision_id;  // index into RunTrace::decisions

  int replicas() const { return ready + starting + pending; }
};

struct RunTrace {
  std::string controller;
  double tick = 1.0;
  double horizon = 0.0;
  int initial_replicas = 0;
  std::vector<TraceRow> rows;
  std::vector<DecisionRecord> decisions;
};

// Deterministic fixed-step run of one controller over the scenario horizon.
// Throws ConfigError for an invalid scenario and InvariantError if the
// model breaks conservation or placement soundness.
RunTrace run(const ScenarioConfig& scenario, ControllerKind controller);

}  // namespace sloscale
