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

#include "sloscale/cluster.hpp"

namespace sloscale {

inline constexpr double kUtilizationCap = 1e6;

// Controller-facing state (L, Q, U, P) plus the raw inputs it came from.
struct SignalSnapshot {
  double t = 0.0;
  double latency = 0.0;      // smoothed p95 proxy, seconds
  double queue = 0.0;        // backlog, requests
  double utilization = 0.0;  // offered load / ready capacity
  int pending = 0;           // unschedulable replicas
  double arrival_rate = 0.0;
  int ready_replicas = 0;
  // Share of offered load the ready capacity cannot absorb. Recorded for
  // audit only; no policy reads it.
  double error_rate = 0.0;
};

// Exponentially weighted moving average. Empty until the first sample.
struct Ewma {
  double alpha = 0.5;
  std::optional<double> value;

  double update(double sample) {
    value = value ? alpha * sample + (1.0 - alpha) * *value : sample;
    return *value;
  }
};

SignalSnapshot sample(const ClusterState& cluster, double arrival_rate, const ServiceModel& model,
                      Ewma& latency_filter);

// Holt linear exponential smoothing. `trend` is per control step.
struct ForecastState {
  double level = 0.0;
  double trend = 0.0;
  double alpha = 0.5;
  double beta = 0.3;
  bool primed = false;
};

ForecastState forecast_update(ForecastState f, double observed_rate);

// Predicted rate `horizon` seconds ahead when one update spans `dt` seconds.
double forecast_horizon(const ForecastState& f, double horizon, double dt);

}  // namespace sloscale
