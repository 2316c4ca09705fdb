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

#include "sloscale/metrics.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace sloscale {

ViolationStats slo_violations(const RunTrace& trace, double slo_latency_target) {
  ViolationStats out;
  bool in_episode = false;
  for (const TraceRow& row : trace.rows) {
    const bool breach = row.latency > slo_latency_target;
    if (breach) {
      if (!in_episode) ++out.count;
      out.duration += trace.tick;
    }
    in_episode = breach;
  }
  return out;
}

std::optional<double> time_to_scale(const RunTrace& trace, const WorkloadSpec& workload,
                                    double service_rate, double target_utilization) {
  if (workload.kind != WorkloadKind::kBursty) return std::nullopt;
  const std::vector<double> onsets = burst_onsets(workload, trace.horizon);
  if (onsets.empty()) return std::nullopt;
  const double burst_rate = workload.base_rate * workload.burst_amplitude;
  const int demand = static_cast<int>(
      std::ceil(burst_rate / (service_rate * target_utilization) - 1e-9));

  double total = 0.0;
  for (double onset : onsets) {
    double elapsed = workload.burst_duration;
    for (const TraceRow& row : trace.rows) {
      if (row.t < onset) continue;
      if (row.t - onset > workload.burst_duration) break;
      if (row.ready >= demand) {
        elapsed = row.t - onset;
        break;
      }
    }
    total += elapsed;
  }
  return total / static_cast<double>(onsets.size());
}

CostStats cost_metrics(const RunTrace& trace, const ControllerConfig& cfg) {
  CostStats out;
  for (const TraceRow& row : trace.rows) {
    out.node_hours += row.nodes_active * trace.tick / 3600.0;
    out.replica_hours += (row.ready + row.starting) * trace.tick / 3600.0;
  }
  out.cost = out.node_hours * cfg.cost_per_node_hour + out.replica_hours * cfg.cost_per_replica_hour;
  return out;
}

StabilityStats stability_metrics(const RunTrace& trace, double oscillation_window) {
  StabilityStats out;
  int previous = trace.initial_replicas;
  int last_direction = 0;
  double last_event_t = 0.0;
  for (const TraceRow& row : trace.rows) {
    const int delta = row.replicas() - previous;
    previous = row.replicas();
    if (delta == 0) continue;
    const int direction = delta > 0 ? 1 : -1;
    ++out.scale_events;
    out.churn += std::abs(delta);
    if (last_direction != 0 && direction != last_direction &&
        row.t - last_event_t <= oscillation_window) {
      ++out.oscillations;
    }
    last_direction = direction;
    last_event_t = row.t;
  }
  return out;
}

MetricsReport make_report(const RunTrace& trace, const ScenarioConfig& scenario) {
  MetricsReport r;
  r.controller = trace.controller;
  const ViolationStats v = slo_violations(trace, scenario.controller.slo_latency_target);
  r.slo_violation_count = v.count;
  r.slo_violation_duration = v.duration;
  r.mean_time_to_scale = time_to_scale(trace, scenario.workload, scenario.service.per_replica_rate,
                                       scenario.controller.target_utilization);
  const CostStats c = cost_metrics(trace, scenario.controller);
  r.node_hours = c.node_hours;
  r.replica_hours = c.replica_hours;
  r.cost = c.cost;
  const StabilityStats s = stability_metrics(trace);
  r.scale_event_count = s.scale_events;
  r.oscillation_count = s.oscillations;
  r.replica_churn = s.churn;
  return r;
}

namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  int n = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return n ? sum / n : 0.0; }
  double stddev() const {
    if (n == 0) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / n - m * m));
  }
};

}  // namespace

AggregateReport aggregate(std::span<const MetricsReport> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  Moments count, duration, tts, node, replica, cost, events, osc, churn;
  bool has_tts = true;
  for (const MetricsReport& r : runs) {
    count.add(r.slo_violation_count);
    duration.add(r.slo_violation_duration);
    if (r.mean_time_to_scale) {
      tts.add(*r.mean_time_to_scale);
    } else {
      has_tts = false;
    }
    node.add(r.node_hours);
    replica.add(r.replica_hours);
    cost.add(r.cost);
    events.add(r.scale_event_count);
    osc.add(r.oscillation_count);
    churn.add(r.replica_churn);
  }
  AggregateReport out;
  out.runs = static_cast<int>(runs.size());
  out.mean.controller = out.stddev.controller = runs.front().controller;
  // Integer metrics keep integer type, so their mean and spread are rounded
  // to the nearest whole value.
  out.mean.slo_violation_count = static_cast<int>(std::lround(count.mean()));
  out.mean.slo_violation_duration = duration.mean();
  out.mean.node_hours = node.mean();
  out.mean.replica_hours = replica.mean();
  out.mean.cost = cost.mean();
  out.mean.scale_event_count = static_cast<int>(std::lround(events.mean()));
  out.mean.oscillation_count = static_cast<int>(std::lround(osc.mean()));
  out.mean.replica_churn = static_cast<int>(std::lround(churn.mean()));
  out.stddev.slo_violation_duration = duration.stddev();
  out.stddev.node_hours = node.stddev();
  out.stddev.replica_hours = replica.stddev();
  out.stddev.cost = cost.stddev();
  out.stddev.slo_violation_count = static_cast<int>(std::lround(count.stddev()));
  out.stddev.scale_event_count = static_cast<int>(std::lround(events.stddev()));
  out.stddev.oscillation_count = static_cast<int>(std::lround(osc.stddev()));
  out.stddev.replica_churn = static_cast<int>(std::lround(churn.stddev()));
  if (has_tts) {
    out.mean.mean_time_to_scale = tts.mean();
    out.stddev.mean_time_to_scale = tts.stddev();
  }
  return out;
}

std::optional<double> reduction(std::optional<double> base, std::optional<double> value) {
  if (!base || !value || *base == 0.0) return std::nullopt;
  return (*base - *value) / *base;
}

Comparison compare(std::span<const AggregateReport> reports) {
  if (reports.size() < 2) throw std::invalid_argument("compare: need a baseline and at least one other report");
  Comparison out;
  const MetricsReport& base = reports.front().mean;
  out.baseline = base.controller;
  for (const AggregateReport& a : reports) {
    const MetricsReport& m = a.mean;
    ComparisonRow row;
    row.report = a;
    row.slo_count_reduction = reduction(base.slo_violation_count, m.slo_violation_count);
    row.slo_duration_reduction = reduction(base.slo_violation_duration, m.slo_violation_duration);
    row.time_to_scale_reduction = reduction(base.mean_time_to_scale, m.mean_time_to_scale);
    row.node_hours_reduction = reduction(base.node_hours, m.node_hours);
    row.cost_reduction = reduction(base.cost, m.cost);
    row.churn_reduction = reduction(base.replica_churn, m.replica_churn);
    out.rows.push_back(std::move(row));
  }
  return out;
}

Comparison compare(std::span<const MetricsReport> reports) {
  std::vector<AggregateReport> wrapped;
  wrapped.reserve(reports.size());
  for (const MetricsReport& r : reports) wrapped.push_back(aggregate(std::span(&r, 1)));
  return compare(wrapped);
}

}  // namespace sloscale
