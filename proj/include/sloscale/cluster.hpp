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
#include <optional>
#include <utility>
#include <vector>

namespace sloscale {

// Per-replica service behaviour. Latency is derived analytically from the
// offered load and the backlog, see observe_latency().
struct ServiceModel {
  double per_replica_rate = 10.0;  // requests/s served by one ready replica
  double base_latency = 0.05;      // unloaded latency, seconds
  double latency_cap = 30.0;       // saturation ceiling, seconds

  void validate() const;
};

struct ClusterConfig {
  int initial_nodes = 2;
  int initial_replicas = 1;
  int node_capacity = 8;  // replica slots per node
  int max_nodes = 16;
  double pod_start_delay = 15.0;
  double node_provision_delay = 60.0;
  double node_idle_timeout = 300.0;
  // How long replicas must stay unschedulable before the reactive node
  // autoscaler requests capacity on their behalf.
  double pending_trigger_delay = 30.0;

  void validate() const;
};

struct NodeState {
  int id = 0;
  int capacity = 0;
  int used = 0;
  double active_since = 0.0;
  double provisioned_at = 0.0;  // time the node is (or was) ready
  bool active = false;
  std::optional<double> idle_since;
  std::optional<double> retired_at;

  bool provisioning() const { return !active && !retired_at; }
  int free() const { return active ? capacity - used : 0; }
};

struct Pod {
  std::uint64_t serial = 0;  // creation order, used for newest-first removal
  int node_id = 0;
  double ready_at = 0.0;
};

struct StartingGroup {
  int count = 0;
  double ready_at = 0.0;
};

// Full cluster state. Operations below take and return it by value; the
// struct is cheap to copy at the scales the simulator targets.
struct ClusterState {
  double time = 0.0;
  ClusterConfig config;
  std::vector<NodeState> nodes;  // ascending id, retired nodes kept
  std::vector<Pod> pods;         // placed replicas, ready or starting
  double queue_depth = 0.0;
  int pending_replicas = 0;
  double cumulative_served = 0.0;
  double cumulative_arrived = 0.0;
  std::uint64_t next_serial = 0;

  int ready_replicas() const;
  int starting_count() const;
  std::vector<StartingGroup> starting_replicas() const;
  int placed_replicas() const { return static_cast<int>(pods.size()); }
  // Replica count the last actuation asked for: placed plus pending.
  int desired_replicas() const { return placed_replicas() + pending_replicas; }

  int active_nodes() const;
  int provisioning_nodes() const;
  int free_slots() const;
  int inflight_slots() const;  // capacity of nodes still provisioning
};

ClusterState make_cluster(const ClusterConfig& config);

// Advance the cluster by `dt` seconds while `arrivals` requests enter the
// queue. Throws std::invalid_argument for dt <= 0 or non-finite or negative
// arrivals.
ClusterState step(ClusterState state, double arrivals, const ServiceModel& model, double dt);

double observe_latency(const ClusterState& state, double arrival_rate, const ServiceModel& model);

// Scale to `desired_replicas`. New replicas go first-fit onto active nodes
// in id order and become ready after `pod_start_delay`; what does not fit
// stays pending. Scale-down drops pending replicas first, then placed
// replicas newest-first.
ClusterState schedule(ClusterState state, int desired_replicas, double pod_start_delay);

bool can_provision_node(const ClusterState& state);

// Append a node that activates `node_provision_delay` seconds from now.
// Ignored when the cluster already holds max_nodes live nodes; check
// can_provision_node() first to detect that.
ClusterState provision_node(ClusterState state, int capacity, double node_provision_delay);

// Throws InvariantError when conservation or placement soundness is broken.
void check_invariants(const ClusterState& state);

}  // namespace sloscale
