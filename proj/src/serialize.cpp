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

#include "sloscale/serialize.hpp"

#include <sstream>

namespace sloscale {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const SignalSnapshot& s) {
  return {{"t", s.t},
          {"latency", s.latency},
          {"queue", s.queue},
          {"utilization", s.utilization},
          {"pending", s.pending},
          {"arrival_rate", s.arrival_rate},
          {"ready_replicas", s.ready_replicas},
          {"error_rate", s.error_rate}};
}

json to_json(const ScalingAction& a) {
  return {{"target_replicas", a.target_replicas},
          {"node_capacity_hint", optional_json(a.node_capacity_hint)},
          {"vpa_recommendation", optional_json(a.vpa_recommendation)}};
}

json to_json(const DecisionRecord& r) {
  json constraints = json::array();
  for (Constraint c : r.constraints_applied) constraints.push_back(std::string(to_string(c)));
  return {{"t", r.t},
          {"snapshot", to_json(r.snapshot)},
          {"slo_demand", r.slo_demand},
          {"backlog_adjusted", r.backlog_adjusted},
          {"pre_guardrail", r.pre_guardrail},
          {"post_guardrail", r.post_guardrail},
          {"constraints_applied", constraints},
          {"action", to_json(r.action)},
          {"reason", r.reason}};
}

json to_json(const TraceRow& row) {
  return {{"t", row.t},
          {"arrivals", row.arrivals},
          {"ready", row.ready},
          {"starting", row.starting},
          {"pending", row.pending},
          {"nodes_active", row.nodes_active},
          {"queue", row.queue},
          {"latency", row.latency},
          {"utilization", row.utilization},
          {"action", optional_json(row.action)},
          {"decision_id", optional_json(row.decision_id)}};
}

json to_json(const MetricsReport& r) {
  return {{"controller", r.controller},
          {"slo_violation_count", r.slo_violation_count},
          {"slo_violation_duration", r.slo_violation_duration},
          {"mean_time_to_scale", optional_json(r.mean_time_to_scale)},
          {"node_hours", r.node_hours},
          {"replica_hours", r.replica_hours},
          {"cost", r.cost},
          {"scale_event_count", r.scale_event_count},
          {"oscillation_count", r.oscillation_count},
          {"replica_churn", r.replica_churn}};
}

json to_json(const Comparison& c) {
  json rows = json::array();
  for (const ComparisonRow& row : c.rows) {
    rows.push_back({{"controller", row.report.mean.controller},
                    {"runs", row.report.runs},
                    {"mean", to_json(row.report.mean)},
                    {"stddev", to_json(row.report.stddev)},
                    {"reduction",
                     {{"slo_violation_count", optional_json(row.slo_count_reduction)},
                      {"slo_violation_duration", optional_json(row.slo_duration_reduction)},
                      {"mean_time_to_scale", optional_json(row.time_to_scale_reduction)},
                      {"node_hours", optional_json(row.node_hours_reduction)},
                      {"cost", optional_json(row.cost_reduction)},
                      {"replica_churn", optional_json(row.churn_reduction)}}}});
  }
  return {{"baseline", c.baseline}, {"rows", rows}};
}

void write_trace(std::ostream& out, const RunTrace& trace) {
  for (const TraceRow& row : trace.rows) out << to_json(row).dump() << '\n';
}

void write_decisions(std::ostream& out, const RunTrace& trace) {
  for (const DecisionRecord& r : trace.decisions) out << to_json(r).dump() << '\n';
}

std::string report_csv_row(const MetricsReport& r) {
  std::ostringstream os;
  os << r.controller << ',' << r.slo_violation_count << ',' << r.slo_violation_duration << ',';
  if (r.mean_time_to_scale) {
    os << *r.mean_time_to_scale;
  } else {
    os << "NA";
  }
  os << ',' << r.node_hours << ',' << r.replica_hours << ',' << r.cost << ','
     << r.scale_event_count << ',' << r.oscillation_count << ',' << r.replica_churn;
  return os.str();
}

std::string comparison_csv(const Comparison& c) {
  std::string out = std::string(kReportCsvHeader) + "\n";
  for (const ComparisonRow& row : c.rows) out += report_csv_row(row.report.mean) + "\n";
  return out;
}

}  // namespace sloscale
