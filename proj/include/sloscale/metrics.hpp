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
#include <span>
#include <string>
#include <vector>

#include "sloscale/scenario.hpp"
#include "sloscale/simulation.hpp"

namespace sloscale {

inline constexpr double kOscillationWindow = 120.0;

struct ViolationStats {
  int count = 0;          // maximal runs of ticks with latency above target
  double duration = 0.0;  // seconds
};

struct CostStats {
  double node_hours = 0.0;
  double replica_hours = 0.0;
  double cost = 0.0;
};

struct StabilityStats {
  int scale_events = 0;
  int oscillations = 0;
  int churn = 0;
};

struct MetricsReport {
  std::string controller;
  int slo_violation_count = 0;
  double slo_violation_duration = 0.0;
  std::optional<double> mean_time_to_scale;  // bursty workloads only
  double node_hours = 0.0;
  double replica_hours = 0.0;
  double cost = 0.0;
  int scale_event_count = 0;
  int oscillation_count = 0;
  int replica_churn = 0;
};

ViolationStats slo_violations(const RunTrace& trace, double slo_latency_target);

// Mean delay from each burst onset until ready replicas reach the burst's
// steady-state demand. A burst whose demand is not met in time counts its
// full duration. nullopt when the workload is not bursty.
std::optional<double> time_to_scale(const RunTrace& trace, const WorkloadSpec& workload,
                                    double service_rate, double target_utilization);

CostStats cost_metrics(const RunTrace& trace, const ControllerConfig& cfg);

StabilityStats stability_metrics(const RunTrace& trace, double oscillation_window = kOscillationWindow);

MetricsReport make_report(const RunTrace& trace, const ScenarioConfig& scenario);

// Mean and population standard deviation over repeated seeds.
struct AggregateReport {
  MetricsReport mean;
  MetricsReport stddev;
  int runs = 0;
};

AggregateReport aggregate(std::span<const MetricsReport> runs);

// (base - value) / base; nullopt when base is zero or either side missing.
std::optional<double> reduction(std::optional<double> base, std::optional<double> value);

struct ComparisonRow {
  AggregateReport report;
  std::optional<double> slo_count_reduction;
  std::optional<double> slo_duration_reduction;
  std::optional<double> time_to_scale_reduction;
  std::optional<double> node_hours_reduction;
  std::optional<double> cost_reduction;
  std::optional<double> churn_reduction;
};

struct Comparison {
  std::string baseline;
  std::vector<ComparisonRow> rows;
};

// The first entry is the baseline every reduction is measured against.
// Throws std::invalid_argument with fewer than two entries.
Comparison compare(std::span<const AggregateReport> reports);
Comparison compare(std::span<const MetricsReport> reports);

}  // namespace sloscale
