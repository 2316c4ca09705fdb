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

#include "sloscale/simulation.hpp"

#include <algorithm>

#include "sloscale/error.hpp"
#include "sloscale/signals.hpp"

namespace sloscale {

namespace {

// Cluster-level node autoscaler shared by every controller: once replicas
// have been unschedulable for the trigger delay it provisions enough whole
// nodes to cover whatever in-flight capacity does not.
class PendingNodeAutoscaler {
 public:
  void react(ClusterState& cluster) {
    if (cluster.pending_replicas == 0) {
      pending_since_.reset();
      return;
    }
    if (!pending_since_) pending_since_ = cluster.time;
    if (cluster.time - *pending_since_ < cluster.config.pending_trigger_delay) return;
    int uncovered = cluster.pending_replicas - cluster.inflight_slots();
    while (uncovered > 0 && can_provision_node(cluster)) {
      cluster = provision_node(cluster, cluster.config.node_capacity,
                               cluster.config.node_provision_delay);
      uncovered -= cluster.config.node_capacity;
    }
  }

 private:
  std::optional<double> pending_since_;
};

double utilization_of(const ClusterState& cluster, double rate, const ServiceModel& model) {
  const double capacity = cluster.ready_replicas() * model.per_replica_rate;
  if (capacity <= 0.0) return rate > 0.0 ? kUtilizationCap : 0.0;
  return std::min(kUtilizationCap, rate / capacity);
}

void apply(DecisionRecord& record, ClusterState& cluster, TraceRow& row) {
  const int target = record.action.target_replicas;
  if (target != cluster.desired_replicas()) {
    cluster = schedule(cluster, target, cluster.config.pod_start_delay);
    row.action = target;
  }
  if (!record.action.node_capacity_hint) return;
  const int per_node = cluster.config.node_capacity;
  const int nodes = (*record.action.node_capacity_hint + per_node - 1) / per_node;
  int ignored = 0;
  for (int i = 0; i < nodes; ++i) {
    if (!can_provision_node(cluster)) {
      ++ignored;
      continue;
    }
    cluster = provision_node(cluster, per_node, cluster.config.node_provision_delay);
  }
  if (ignored > 0) {
    record.reason += " Ignored " + std::to_string(ignored) +
                     " node request(s): cluster at max_nodes.";
  }
}

}  // namespace

RunTrace run(const ScenarioConfig& scenario, ControllerKind controller) {
  // A zero horizon is a valid degenerate run: everything else must still
  // validate, and the trace comes back empty.
  if (scenario.horizon == 0.0) {
    ScenarioConfig probe = scenario;
    probe.horizon = scenario.tick;
    probe.validate();
  } else {
    scenario.validate();
  }
  RunTrace trace;
  trace.controller = std::string(to_string(controller));
  trace.tick = scenario.tick;
  trace.horizon = scenario.horizon;

  WorkloadSpec workload = scenario.workload;
  workload.seed = scenario.seed;
  const ServiceModel& model = scenario.service;
  ClusterState cluster = make_cluster(scenario.cluster);
  trace.initial_replicas = cluster.desired_replicas();
  Autoscaler scaler(controller, scenario.controller, model);
  Ewma latency_filter{scenario.controller.latency_smoothing, std::nullopt};
  PendingNodeAutoscaler node_autoscaler;

  const std::size_t ticks = scenario.tick_count();
  const std::size_t per_decision = scenario.ticks_per_decision();
  trace.rows.reserve(ticks);
  double interval_arrivals = 0.0;

  for (std::size_t k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * scenario.tick;
    const double arrivals = arrivals_at(workload, t, scenario.tick);
    cluster = step(std::move(cluster), arrivals, model, scenario.tick);
    interval_arrivals += arrivals;
    node_autoscaler.react(cluster);

    const double rate = arrivals / scenario.tick;
    TraceRow row;
    row.latency = observe_latency(cluster, rate, model);
    row.utilization = utilization_of(cluster, rate, model);

    if ((k + 1) % per_decision == 0) {
      const double interval_rate =
          interval_arrivals / (static_cast<double>(per_decision) * scenario.tick);
      interval_arrivals = 0.0;
      const SignalSnapshot snapshot = sample(cluster, interval_rate, model, latency_filter);
      if (auto record = scaler.decide(snapshot, cluster)) {
        apply(*record, cluster, row);
        row.decision_id = static_cast<int>(trace.decisions.size());
        trace.decisions.push_back(std::move(*record));
      }
    }
    check_invariants(cluster);

    row.t = cluster.time;
    row.arrivals = arrivals;
    row.ready = cluster.ready_replicas();
    row.starting = cluster.starting_count();
    row.pending = cluster.pending_replicas;
    row.nodes_active = cluster.active_nodes();
    row.queue = cluster.queue_depth;
    trace.rows.push_back(row);
  }
  return trace;
}

}  // namespace sloscale
