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

#include <ostream>
#include <string>

#include <json.hpp>

#include "sloscale/controllers.hpp"
#include "sloscale/metrics.hpp"
#include "sloscale/simulation.hpp"

namespace sloscale {

// Header of the per-controller comparison CSV.
inline constexpr const char* kReportCsvHeader =
    "controller,slo_count,slo_duration_s,ttscale_s,node_hours,replica_hours,cost,events,"
    "oscillations,churn";

nlohmann::json to_json(const SignalSnapshot& s);
nlohmann::json to_json(const ScalingAction& a);
nlohmann::json to_json(const DecisionRecord& r);
nlohmann::json to_json(const TraceRow& row);
nlohmann::json to_json(const MetricsReport& r);
nlohmann::json to_json(const Comparison& c);

// One JSON object per tick / per decision, newline-terminated.
void write_trace(std::ostream& out, const RunTrace& trace);
void write_decisions(std::ostream& out, const RunTrace& trace);

std::string report_csv_row(const MetricsReport& r);
std::string comparison_csv(const Comparison& c);

}  // namespace sloscale
