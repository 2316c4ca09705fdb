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

#include "sloscale/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sloscale/error.hpp"

namespace sloscale {

namespace {

// Ratios such as 0.55 / 0.5 land a few ulps off their exact value; treat
// anything within kEps of an integer as that integer.
constexpr double kEps = 1e-9;

int ceil_count(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<int>::max();
  const double c = std::ceil(x - kEps);
  if (c >= static_cast<double>(std::numeric_limits<int>::max())) {
    return std::numeric_limits<int>::max();
  }
  return std::max(0, static_cast<int>(c));
}

bool within_window(double now, double t, double window) { return t == now || now - t < window; }

}  // namespace

std::string_view to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kNone:
      return "none";
    case ControllerKind::kDefaultHpa:
      return "default_hpa";
    case ControllerKind::kTunedHpa:
      return "tuned_hpa";
    case ControllerKind::kHpaVpa:
      return "hpa_vpa";
    case ControllerKind::kSloAware:
      return "slo_aware";
  }
  return "unknown";
}

ControllerKind parse_controller_kind(std::string_view name) {
  for (ControllerKind k : {ControllerKind::kNone, ControllerKind::kDefaultHpa,
                           ControllerKind::kTunedHpa, ControllerKind::kHpaVpa,
                           ControllerKind::kSloAware}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("controllers", "unknown controller '" + std::string(name) +
                                       "' (expected none, default_hpa, tuned_hpa, hpa_vpa or "
                                       "slo_aware)");
}

std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::kBoundClamp:
      return "bound_clamp";
    case Constraint::kStepLimit:
      return "step_limit";
    case Constraint::kStabilizationHold:
      return "stabilization_hold";
    case Constraint::kCooldownHold:
      return "cooldown_hold";
    case Constraint::kCostFloor:
      return "cost_floor";
    case Constraint::kToleranceSkip:
      return "tolerance_skip";
  }
  return "unknown";
}

void ControllerConfig::validate() const {
  if (min_replicas < 1) throw ConfigError("controller.min_replicas", "must be >= 1");
  if (max_replicas < min_replicas) {
    throw ConfigError("controller.max_replicas", "must be >= min_replicas");
  }
  if (!(control_interval > 0.0)) throw ConfigError("controller.control_interval", "must be > 0");
  if (!(slo_latency_target > 0.0)) {
    throw ConfigError("controller.slo_latency_target", "must be > 0");
  }
  if (!(cpu_target > 0.0)) throw ConfigError("controller.cpu_target", "must be > 0");
  if (!(tolerance_band >= 0.0)) throw ConfigError("controller.tolerance_band", "must be >= 0");
  if (max_step_up < 1) throw ConfigError("controller.max_step_up", "must be >= 1");
  if (max_step_down < 1) throw ConfigError("controller.max_step_down", "must be >= 1");
  if (!(scale_up_stabilization >= 0.0)) {
    throw ConfigError("controller.scale_up_stabilization", "must be >= 0");
  }
  if (!(scale_down_stabilization >= 0.0)) {
    throw ConfigError("controller.scale_down_stabilization", "must be >= 0");
  }
  if (!(cooldown_after_scale_up >= 0.0)) {
    throw ConfigError("controller.cooldown_after_scale_up", "must be >= 0");
  }
  if (!(drain_window > 0.0)) throw ConfigError("controller.drain_window", "must be > 0");
  if (!(target_utilization > 0.0 && target_utilization <= 1.0)) {
    throw ConfigError("controller.target_utilization", "must lie in (0, 1]");
  }
  if (!(forecast_alpha >= 0.0 && forecast_alpha <= 1.0)) {
    throw ConfigError("controller.forecast_alpha", "must lie in [0, 1]");
  }
  if (!(forecast_beta >= 0.0 && forecast_beta <= 1.0)) {
    throw ConfigError("controller.forecast_beta", "must lie in [0, 1]");
  }
  if (!(forecast_horizon >= 0.0)) throw ConfigError("controller.forecast_horizon", "must be >= 0");
  if (!(latency_smoothing > 0.0 && latency_smoothing <= 1.0)) {
    throw ConfigError("controller.latency_smoothing", "must lie in (0, 1]");
  }
  if (!(cost_per_replica_hour >= 0.0)) {
    throw ConfigError("controller.cost_per_replica_hour", "must be >= 0");
  }
  if (!(cost_per_node_hour >= 0.0)) {
    throw ConfigError("controller.cost_per_node_hour", "must be >= 0");
  }
  if (max_nodes < 1) throw ConfigError("controller.max_nodes", "must be >= 1");
}

bool DecisionRecord::has(Constraint c) const {
  return std::find(constraints_applied.begin(), constraints_applied.end(), c) !=
         constraints_applied.end();
}

int hpa_desired(int current, double metric, double target, double tolerance) {
  const double ratio = metric / target;
  if (std::abs(ratio - 1.0) <= tolerance + kEps) return current;
  return ceil_count(current * ratio);
}

int estimate_slo_demand(const SignalSnapshot& s, const ControllerConfig& cfg,
                        double predicted_rate, double service_rate) {
  const int capacity_floor = ceil_count(predicted_rate / (service_rate * cfg.target_utilization));
  if (s.latency > cfg.slo_latency_target) {
    const double severity = std::max(1.0, s.latency / cfg.slo_latency_target);
    return std::max(capacity_floor, ceil_count(s.ready_replicas * severity));
  }
  return capacity_floor;
}

int adjust_for_backlog(int n, const SignalSnapshot& s, const ControllerConfig& cfg,
                       double service_rate) {
  if (s.queue <= 0.0) return n;
  const int drain =
      ceil_count(s.arrival_rate / service_rate + s.queue / (service_rate * cfg.drain_window));
  return std::max(n, drain);
}

GuardrailResult enforce_guardrails(int candidate, int current, const ControllerConfig& cfg,
                                   GuardrailHistory& history, double now) {
  GuardrailResult out;
  history.recommendations.push_back({now, candidate});
  const double keep = std::max(cfg.scale_up_stabilization, cfg.scale_down_stabilization);
  while (!history.recommendations.empty() &&
         !within_window(now, history.recommendations.front().t, keep)) {
    history.recommendations.pop_front();
  }

  int result = candidate;
  const bool cooling = candidate < current && history.last_scale_up &&
                       now - *history.last_scale_up <= cfg.cooldown_after_scale_up;
  if (cooling) {
    result = current;
    out.constraints.push_back(Constraint::kCooldownHold);
  } else {
    int up = candidate;
    int down = candidate;
    for (const auto& e : history.recommendations) {
      if (within_window(now, e.t, cfg.scale_up_stabilization)) up = std::min(up, e.replicas);
      if (within_window(now, e.t, cfg.scale_down_stabilization)) down = std::max(down, e.replicas);
    }
    int stabilized = current;
    if (stabilized < up) stabilized = up;
    if (stabilized > down) stabilized = down;
    if (stabilized != candidate) out.constraints.push_back(Constraint::kStabilizationHold);
    result = stabilized;

    if (result > current + cfg.max_step_up) {
      result = current + cfg.max_step_up;
      out.constraints.push_back(Constraint::kStepLimit);
    } else if (result < current - cfg.max_step_down) {
      result = current - cfg.max_step_down;
      out.constraints.push_back(Constraint::kStepLimit);
    }
  }

  const int bounded = std::clamp(result, cfg.min_replicas, cfg.max_replicas);
  if (bounded != result) out.constraints.push_back(Constraint::kBoundClamp);
  out.replicas = bounded;
  if (out.replicas > current) history.last_scale_up = now;
  return out;
}

int capacity_shortfall(int target, const ClusterState& cluster) {
  return std::max(0, target - cluster.placed_replicas() - cluster.free_slots() -
                         cluster.inflight_slots());
}

ScalingAction coordinate_actuation(int target, const ClusterState& cluster,
                                   const ControllerConfig& cfg) {
  ScalingAction action;
  action.target_replicas = target;
  const int shortfall = capacity_shortfall(target, cluster);
  if (shortfall == 0) return action;
  const int live = cluster.active_nodes() + cluster.provisioning_nodes();
  const int headroom = std::min(cfg.max_nodes, cluster.config.max_nodes) - live;
  const int per_node = cluster.config.node_capacity;
  const int nodes = std::min(headroom, (shortfall + per_node - 1) / per_node);
  if (nodes > 0) action.node_capacity_hint = nodes * per_node;
  return action;
}

std::optional<double> vpa_recommend(std::span<const double> usage_history,
                                    double current_request) {
  if (usage_history.empty()) return std::nullopt;
  std::vector<double> sorted(usage_history.begin(), usage_history.end());
  const auto rank = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(sorted.size())));
  const auto nth = sorted.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(rank, 1) - 1);
  std::nth_element(sorted.begin(), nth, sorted.end());
  return *nth * kVpaSafetyMargin * current_request;
}

namespace {

std::string describe(const DecisionRecord& r, int current) {
  std::ostringstream os;
  const int target = r.action.target_replicas;
  if (target > current) {
    os << "Scale up " << current << " -> " << target;
  } else if (target < current) {
    os << "Scale down " << current << " -> " << target;
  } else {
    os << "Hold at " << current;
  }
  if (r.constraints_applied.empty()) {
    os << "; no guardrail bound the target";
  } else {
    os << "; binding constraint " << to_string(r.constraints_applied.front());
    for (std::size_t i = 1; i < r.constraints_applied.size(); ++i) {
      os << ", then " << to_string(r.constraints_applied[i]);
    }
  }
  os << ".";
  if (r.action.node_capacity_hint) {
    os << " Requested " << *r.action.node_capacity_hint << " node slots for unschedulable replicas.";
  }
  return os.str();
}

}  // namespace

DecisionRecord decide(const SignalSnapshot& s, const ControllerConfig& cfg, ControllerState& state,
                      const ClusterState& cluster, const ServiceModel& model) {
  DecisionRecord r;
  r.t = s.t;
  r.snapshot = s;
  const int current = cluster.desired_replicas();

  state.forecast.alpha = cfg.forecast_alpha;
  state.forecast.beta = cfg.forecast_beta;
  state.forecast = forecast_update(state.forecast, s.arrival_rate);
  const double predicted =
      forecast_horizon(state.forecast, cfg.forecast_horizon, cfg.control_interval);

  r.slo_demand = estimate_slo_demand(s, cfg, predicted, model.per_replica_rate);
  r.backlog_adjusted = adjust_for_backlog(r.slo_demand, s, cfg, model.per_replica_rate);
  r.pre_guardrail = r.backlog_adjusted;

  GuardrailResult g = enforce_guardrails(r.pre_guardrail, current, cfg, state.guardrails, s.t);
  r.post_guardrail = g.replicas;
  r.constraints_applied = std::move(g.constraints);
  if (r.post_guardrail < current) r.constraints_applied.push_back(Constraint::kCostFloor);

  r.action = coordinate_actuation(r.post_guardrail, cluster, cfg);
  r.reason = describe(r, current);
  std::ostringstream os;
  os << " SLO demand " << r.slo_demand << " (latency " << s.latency << " s vs target "
     << cfg.slo_latency_target << " s, forecast " << predicted << " req/s), backlog-adjusted "
     << r.backlog_adjusted << " (queue " << s.queue << ").";
  if (capacity_shortfall(r.post_guardrail, cluster) > 0 && !r.action.node_capacity_hint) {
    os << " Capacity short but max_nodes reached; no node hint emitted.";
  }
  r.reason += os.str();
  return r;
}

DecisionRecord decide_hpa(const SignalSnapshot& s, const ControllerConfig& cfg,
                          ControllerState& state, const ClusterState& cluster,
                          bool recommend_vpa) {
  DecisionRecord r;
  r.t = s.t;
  r.snapshot = s;
  const int current = cluster.desired_replicas();

  int desired = current;
  bool skipped = false;
  if (s.ready_replicas > 0 && current > 0) {
    // Replicas that are not ready yet contribute zero usage.
    const double metric = s.utilization * s.ready_replicas / current;
    desired = hpa_desired(current, metric, cfg.cpu_target, cfg.tolerance_band);
    skipped = desired == current && ceil_count(current * metric / cfg.cpu_target) != current;
  }
  r.slo_demand = desired;
  r.backlog_adjusted = desired;
  r.pre_guardrail = desired;

  GuardrailResult g = enforce_guardrails(desired, current, cfg, state.guardrails, s.t);
  r.post_guardrail = g.replicas;
  if (skipped) r.constraints_applied.push_back(Constraint::kToleranceSkip);
  r.constraints_applied.insert(r.constraints_applied.end(), g.constraints.begin(),
                               g.constraints.end());
  r.action.target_replicas = r.post_guardrail;

  if (recommend_vpa) {
    state.usage_history.push_back(std::min(s.utilization, 1.0));
    r.action.vpa_recommendation = vpa_recommend(state.usage_history, 1.0);
  }
  r.reason = describe(r, current);
  std::ostringstream os;
  os << " CPU ratio rule on utilization " << s.utilization << " vs target " << cfg.cpu_target
     << ".";
  r.reason += os.str();
  return r;
}

ControllerConfig baseline_config(ControllerKind kind, const ControllerConfig& shared) {
  ControllerConfig cfg = shared;
  switch (kind) {
    case ControllerKind::kDefaultHpa:
    case ControllerKind::kHpaVpa:
      cfg.cpu_target = 0.5;
      cfg.scale_up_stabilization = 0.0;
      cfg.scale_down_stabilization = 300.0;
      cfg.max_step_up = shared.max_replicas;
      cfg.max_step_down = shared.max_replicas;
      cfg.cooldown_after_scale_up = 0.0;
      break;
    case ControllerKind::kTunedHpa:
      cfg.cpu_target = 0.65;
      cfg.scale_up_stabilization = 0.0;
      cfg.scale_down_stabilization = 120.0;
      cfg.max_step_up = 4;
      cfg.max_step_down = shared.max_replicas;
      cfg.cooldown_after_scale_up = 0.0;
      break;
    case ControllerKind::kNone:
    case ControllerKind::kSloAware:
      break;
  }
  return cfg;
}

Autoscaler::Autoscaler(ControllerKind kind, const ControllerConfig& shared,
                       const ServiceModel& model)
    : kind_(kind), config_(baseline_config(kind, shared)), model_(model) {
  config_.validate();
}

std::optional<DecisionRecord> Autoscaler::decide(const SignalSnapshot& s,
                                                 const ClusterState& cluster) {
  switch (kind_) {
    case ControllerKind::kNone:
      return std::nullopt;
    case ControllerKind::kDefaultHpa:
    case ControllerKind::kTunedHpa:
      return decide_hpa(s, config_, state_, cluster, false);
    case ControllerKind::kHpaVpa:
      return decide_hpa(s, config_, state_, cluster, true);
    case ControllerKind::kSloAware:
      return sloscale::decide(s, config_, state_, cluster, model_);
  }
  return std::nullopt;
}

}  // namespace sloscale
