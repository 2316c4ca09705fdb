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
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "sloscale/metrics.hpp"
#include "sloscale/scenario.hpp"

namespace sloscale {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentOptions {
  std::filesystem::path out_dir = "out";
  std::optional<std::vector<ControllerKind>> controllers;
  std::optional<std::uint64_t> seed;
  std::optional<int> repeats;
  std::ostream* log = nullptr;  // progress lines; null for quiet
};

struct ExperimentResult {
  std::vector<AggregateReport> reports;  // one per controller, scenario order
  std::optional<Comparison> comparison;  // present with two or more controllers
  std::vector<std::filesystem::path> files;
};

// Runs every (controller, seed) pair and writes
//   <out>/<scenario>/<controller>/<seed>/{trace.jsonl,decisions.jsonl,report.json}
//   <out>/<scenario>/comparison.{json,csv}
// Throws ConfigError, IoError or InvariantError.
ExperimentResult run_experiment(ScenarioConfig scenario, const ExperimentOptions& options);

}  // namespace sloscale
