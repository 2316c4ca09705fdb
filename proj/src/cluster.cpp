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

#include "sloscale/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "sloscale/error.hpp"

namespace sloscale {

void ServiceModel::validate() const {
  if (!(per_replica_rate > 0.0)) {
    throw ConfigError("service.per_replica_rate", "must be > 0");
  }
  if (!(base_latency > 0.0)) {
    throw ConfigError("service.base_latency", "must be > 0");
  }
  if (!(latency_cap > base_latency)) {
    throw ConfigError("service.latency_cap", "must be > base_latency");
  }
}

void ClusterConfig::validate() const {
  if (node_capacity < 1) throw ConfigError("cluster.node_capacity", "must be >= 1");
  if (max_nodes < 1) throw ConfigError("cluster.max_nodes", "must be >= 1");
  if (initial_nodes < 0 || initial_nodes > max_nodes) {
    throw ConfigError("cluster.initial_nodes", "must lie in [0, max_nodes]");
  }
  if (initial_replicas < 0 || initial_replicas > initial_nodes * node_capacity) {
    throw ConfigError("cluster.initial_replicas",
                      "must be >= 0 and fit on the initial nodes");
  }
  if (!(pod_start_delay >= 0.0)) throw ConfigError("cluster.pod_start_delay", "must be >= 0");
  if (!(node_provision_delay >= 0.0)) {
    throw ConfigError("cluster.node_provision_delay", "must be >= 0");
  }
  if (!(node_idle_timeout >= 0.0)) throw ConfigError("cluster.node_idle_timeout", "must be >= 0");
  if (!(pending_trigger_delay >= 0.0)) {
    throw ConfigError("cluster.pending_trigger_delay", "must be >= 0");
  }
}

int ClusterState::ready_replicas() const {
  return static_cast<int>(
      std::count_if(pods.begin(), pods.end(), [&](const Pod& p) { return p.ready_at <= time; }));
}

int ClusterState::starting_count() const { return placed_replicas() - ready_replicas(); }

std::vector<StartingGroup> ClusterState::starting_replicas() const {
  std::map<double, int> groups;
  for (const Pod& p : pods) {
    if (p.ready_at > time) ++groups[p.ready_at];
  }
  std::vector<StartingGroup> out;
  out.reserve(groups.size());
  for (const auto& [ready_at, count] : groups) out.push_back({count, ready_at});
  return out;
}

int ClusterState::active_nodes() const {
  return static_cast<int>(
      std::count_if(nodes.begin(), nodes.end(), [](const NodeState& n) { return n.active; }));
}

int ClusterState::provisioning_nodes() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(),
                                        [](const NodeState& n) { return n.provisioning(); }));
}

int ClusterState::free_slots() const {
  int free = 0;
  for (const NodeState& n : nodes) free += n.free();
  return free;
}

int ClusterState::inflight_slots() const {
  int slots = 0;
  for (const NodeState& n : nodes) {
    if (n.provisioning()) slots += n.capacity;
  }
  return slots;
}

namespace {

// First-fit by ascending node id. Returns the number of replicas that
// could not be placed.
int place(ClusterState& state, int count, double ready_at) {
  for (NodeState& node : state.nodes) {
    while (count > 0 && node.free() > 0) {
      state.pods.push_back({state.next_serial++, node.id, ready_at});
      ++node.used;
      node.idle_since.reset();
      --count;
    }
    if (count == 0) break;
  }
  return count;
}

NodeState& node_by_id(ClusterState& state, int id) {
  auto it = std::lower_bound(state.nodes.begin(), state.nodes.end(), id,
                             [](const NodeState& n, int v) { return n.id < v; });
  if (it == state.nodes.end() || it->id != id) {
    throw InvariantError("pod references unknown node " + std::to_string(id));
  }
  return *it;
}

}  // namespace

ClusterState make_cluster(const ClusterConfig& config) {
  config.validate();
  ClusterState state;
  state.config = config;
  for (int i = 0; i < config.initial_nodes; ++i) {
    NodeState node;
    node.id = i;
    node.capacity = config.node_capacity;
    node.active = true;
    state.nodes.push_back(node);
  }
  state.pending_replicas = place(state, config.initial_replicas, 0.0);
  return state;
}

ClusterState step(ClusterState state, double arrivals, const ServiceModel& model, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step: dt must be > 0");
  if (!std::isfinite(arrivals) || arrivals < 0.0) {
    throw std::invalid_argument("step: arrivals must be finite and >= 0");
  }
  state.time += dt;

  for (NodeState& node : state.nodes) {
    if (node.provisioning() && node.provisioned_at <= state.time) {
      node.active = true;
      node.active_since = node.provisioned_at;
    }
  }
  if (state.pending_replicas > 0) {
    state.pending_replicas =
        place(state, state.pending_replicas, state.time + state.config.pod_start_delay);
  }

  const double capacity = state.ready_replicas() * model.per_replica_rate * dt;
  const double offered = state.queue_depth + arrivals;
  const double served = std::min(offered, capacity);
  state.queue_depth = offered - served;
  state.cumulative_served += served;
  state.cumulative_arrived += arrivals;

  for (NodeState& node : state.nodes) {
    if (!node.active) continue;
    if (node.used > 0) {
      node.idle_since.reset();
      continue;
    }
    if (!node.idle_since) node.idle_since = state.time;
    if (state.time - *node.idle_since > state.config.node_idle_timeout) {
      node.active = false;
      node.retired_at = state.time;
    }
  }
  return state;
}

double observe_latency(const ClusterState& state, double arrival_rate, const ServiceModel& model) {
  const int ready = state.ready_replicas();
  if (ready == 0) return model.latency_cap;
  const double capacity = ready * model.per_replica_rate;
  const double rho = arrival_rate / capacity;
  double latency;
  if (rho < 1.0) {
    latency = model.base_latency / (1.0 - rho) + state.queue_depth / capacity;
  } else {
    latency = model.base_latency + (state.queue_depth + 1.0) / capacity;
  }
  return std::min(model.latency_cap, latency);
}

ClusterState schedule(ClusterState state, int desired_replicas, double pod_start_delay) {
  desired_replicas = std::max(0, desired_replicas);
  const int placed = state.placed_replicas();
  if (desired_replicas >= placed) {
    const int extra = desired_replicas - placed - state.pending_replicas;
    if (extra > 0) {
      state.pending_replicas += place(state, extra, state.time + pod_start_delay);
    } else {
      state.pending_replicas += extra;
    }
    return state;
  }

  state.pending_replicas = 0;
  std::sort(state.pods.begin(), state.pods.end(),
            [](const Pod& a, const Pod& b) { return a.serial < b.serial; });
  while (state.placed_replicas() > desired_replicas) {
    NodeState& node = node_by_id(state, state.pods.back().node_id);
    --node.used;
    if (node.used == 0) node.idle_since = state.time;
    state.pods.pop_back();
  }
  return state;
}

bool can_provision_node(const ClusterState& state) {
  return state.active_nodes() + state.provisioning_nodes() < state.config.max_nodes;
}

ClusterState provision_node(ClusterState state, int capacity, double node_provision_delay) {
  if (capacity <= 0 || !can_provision_node(state)) return state;
  NodeState node;
  node.id = state.nodes.empty() ? 0 : state.nodes.back().id + 1;
  node.capacity = capacity;
  node.provisioned_at = state.time + node_provision_delay;
  state.nodes.push_back(node);
  return state;
}

void check_invariants(const ClusterState& state) {
  if (state.queue_depth < 0.0 || state.pending_replicas < 0) {
    throw InvariantError("negative queue depth or pending count");
  }
  const double drift =
      std::abs(state.cumulative_arrived - state.cumulative_served - state.queue_depth);
  if (drift > 1e-6 * std::max(1.0, state.cumulative_arrived)) {
    throw InvariantError("request conservation violated");
  }
  std::map<int, int> per_node;
  for (const Pod& p : state.pods) ++per_node[p.node_id];
  for (const NodeState& n : state.nodes) {
    const int count = per_node.count(n.id) ? per_node.at(n.id) : 0;
    if (count != n.used) throw InvariantError("node used-slot count out of sync");
    if (n.used < 0 || n.used > n.capacity) throw InvariantError("node over capacity");
    if (n.used > 0 && !n.active) throw InvariantError("replica placed on inactive node");
  }
  for (const auto& [id, count] : per_node) {
    const bool known = std::any_of(state.nodes.begin(), state.nodes.end(),
                                   [node_id = id](const NodeState& n) { return n.id == node_id; });
    if (!known) throw InvariantError("pod placed on unknown node");
  }
}

}  // namespace sloscale
