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

#include "sloscale/signals.hpp"

#include <algorithm>

namespace sloscale {

SignalSnapshot sample(const ClusterState& cluster, double arrival_rate, const ServiceModel& model,
                      Ewma& latency_filter) {
  SignalSnapshot s;
  s.t = cluster.time;
  s.queue = cluster.queue_depth;
  s.pending = cluster.pending_replicas;
  s.arrival_rate = arrival_rate;
  s.ready_replicas = cluster.ready_replicas();
  s.latency = latency_filter.update(observe_latency(cluster, arrival_rate, model));

  const double capacity = s.ready_replicas * model.per_replica_rate;
  if (capacity > 0.0) {
    s.utilization = std::min(kUtilizationCap, arrival_rate / capacity);
  } else {
    s.utilization = arrival_rate > 0.0 ? kUtilizationCap : 0.0;
  }
  if (arrival_rate > 0.0) s.error_rate = std::max(0.0, 1.0 - capacity / arrival_rate);
  return s;
}

ForecastState forecast_update(ForecastState f, double observed_rate) {
  if (!f.primed) {
    f.level = observed_rate;
    f.trend = 0.0;
    f.primed = true;
    return f;
  }
  const double previous = f.level;
  f.level = f.alpha * observed_rate + (1.0 - f.alpha) * (f.level + f.trend);
  f.trend = f.beta * (f.level - previous) + (1.0 - f.beta) * f.trend;
  return f;
}

double forecast_horizon(const ForecastState& f, double horizon, double dt) {
  return std::max(0.0, f.level + f.trend * (horizon / dt));
}

}  // namespace sloscale
