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

#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sloscale/cluster.hpp"
#include "sloscale/signals.hpp"

namespace sloscale {

enum class ControllerKind { kNone, kDefaultHpa, kTunedHpa, kHpaVpa, kSloAware };

std::string_view to_string(ControllerKind kind);
ControllerKind parse_controller_kind(std::string_view name);

struct ControllerConfig {
  int min_replicas = 1;
  int max_replicas = 50;
  double control_interval = 15.0;
  double slo_latency_target = 0.2;
  double cpu_target = 0.5;  // HPA baselines only
  double tolerance_band = 0.10;
  int max_step_up = 16;
  int max_step_down = 8;
  double scale_up_stabilization = 0.0;
  double scale_down_stabilization = 120.0;
  double cooldown_after_scale_up = 60.0;
  double drain_window = 30.0;
  double target_utilization = 0.7;  // headroom kept by the capacity floor
  double forecast_alpha = 0.5;
  double forecast_beta = 0.3;
  double forecast_horizon = 15.0;  // seconds; defaults to the pod start delay
  double latency_smoothing = 0.5;
  double cost_per_replica_hour = 0.0;
  double cost_per_node_hour = 1.0;
  int max_nodes = 16;

  void validate() const;
};

enum class Constraint {
  kBoundClamp,
  kStepLimit,
  kStabilizationHold,
  kCooldownHold,
  kCostFloor,
  kToleranceSkip,
};

std::string_view to_string(Constraint c);

struct ScalingAction {
  int target_replicas = 0;
  std::optional<int> node_capacity_hint;      // replica slots to provision
  std::optional<double> vpa_recommendation;  // per-replica request, never applied
};

// One audit record per control decision.
struct DecisionRecord {
  double t = 0.0;
  SignalSnapshot snapshot;
  int slo_demand = 0;
  int backlog_adjusted = 0;
  int pre_guardrail = 0;
  int post_guardrail = 0;
  std::vector<Constraint> constraints_applied;
  ScalingAction action;
  std::string reason;

  bool has(Constraint c) const;
};

struct GuardrailHistory {
  struct Entry {
    double t;
    int replicas;
  };
  std::deque<Entry> recommendations;
  std::optional<double> last_scale_up;
};

struct GuardrailResult {
  int replicas = 0;
  std::vector<Constraint> constraints;
};

// Upstream HPA ratio rule with a dead band around the target.
int hpa_desired(int current, double metric, double target, double tolerance);

// Replica demand implied by the SLO condition and the forecast rate.
int estimate_slo_demand(const SignalSnapshot& s, const ControllerConfig& cfg, double predicted_rate,
                        double service_rate);

// Raise `n` so the current backlog drains within cfg.drain_window.
int adjust_for_backlog(int n, const SignalSnapshot& s, const ControllerConfig& cfg,
                       double service_rate);

// Cooldown, stabilization windows, step limits and hard bounds, applied in
// that order. Records `candidate` in `history` and stamps a scale-up.
GuardrailResult enforce_guardrails(int candidate, int current, const ControllerConfig& cfg,
                                   GuardrailHistory& history, double now);

// Checks the target against placed replicas, free slots and capacity
// already in flight, and sizes a node hint in whole nodes when short.
ScalingAction coordinate_actuation(int target, const ClusterState& cluster,
                                   const ControllerConfig& cfg);

// Replica slots `target` cannot get from current and in-flight capacity.
int capacity_shortfall(int target, const ClusterState& cluster);

inline constexpr double kVpaSafetyMargin = 1.15;

// p90 (nearest rank) of observed usage times the safety margin, scaled to
// the current request. Empty history yields no recommendation.
std::optional<double> vpa_recommend(std::span<const double> usage_history, double current_request);

struct ControllerState {
  GuardrailHistory guardrails;
  ForecastState forecast;
  std::vector<double> usage_history;
};

// The five-stage SLO- and cost-aware pipeline.
DecisionRecord decide(const SignalSnapshot& s, const ControllerConfig& cfg, ControllerState& state,
                      const ClusterState& cluster, const ServiceModel& model);

// CPU-ratio HPA decision, optionally attaching a VPA recommendation.
DecisionRecord decide_hpa(const SignalSnapshot& s, const ControllerConfig& cfg,
                          ControllerState& state, const ClusterState& cluster, bool recommend_vpa);

// Baseline parameter overrides on top of the scenario's shared settings.
ControllerConfig baseline_config(ControllerKind kind, const ControllerConfig& shared);

// Owns a controller's configuration and internal state for one run.
class Autoscaler {
 public:
  Autoscaler(ControllerKind kind, const ControllerConfig& shared, const ServiceModel& model);

  ControllerKind kind() const { return kind_; }
  const ControllerConfig& config() const { return config_; }

  // nullopt for the no-op controller.
  std::optional<DecisionRecord> decide(const SignalSnapshot& s, const ClusterState& cluster);

 private:
  ControllerKind kind_;
  ControllerConfig config_;
  ServiceModel model_;
  ControllerState state_;
};

}  // namespace sloscale
