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
#include <string>
#include <string_view>
#include <vector>

namespace sloscale {

enum class WorkloadKind { kBursty, kQueueDriven, kMixed };

std::string_view to_string(WorkloadKind kind);
// Throws ConfigError("workload.kind", ...) for unknown names.
WorkloadKind parse_workload_kind(std::string_view name);

// One leg of a queue-driven profile: the rate moves linearly from the
// previous level to `rate` over [start, end) and then holds at `rate`
// until the next segment begins.
struct RampSegment {
  double start = 0.0;
  double end = 0.0;
  double rate = 0.0;
};

struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::kBursty;
  double base_rate = 50.0;        // requests/s
  double burst_amplitude = 1.0;   // multiplier inside a burst window
  double burst_duration = 60.0;   // seconds; also the batch window for mixed
  double burst_interval = 600.0;  // seconds between window onsets
  double burst_offset = 300.0;    // onset of the first window
  double batch_fraction = 0.0;    // mixed: share of traffic arriving in batches
  double noise_std = 0.0;         // log-normal sigma of the multiplicative noise
  std::uint64_t seed = 0;
  std::vector<RampSegment> ramps;  // queue-driven profile

  void validate() const;
};

// Noiseless request rate at time t.
double nominal_rate(const WorkloadSpec& spec, double t);

bool in_burst_window(const WorkloadSpec& spec, double t);

// Onsets of every burst window that lies fully inside [0, horizon).
std::vector<double> burst_onsets(const WorkloadSpec& spec, double horizon);

// Integer arrivals for the tick [t, t + dt). A pure function of (spec, t, dt).
double arrivals_at(const WorkloadSpec& spec, double t, double dt);

}  // namespace sloscale
