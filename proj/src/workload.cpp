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

#include "sloscale/workload.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sloscale/error.hpp"

namespace sloscale {

std::string_view to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::kBursty:
      return "bursty";
    case WorkloadKind::kQueueDriven:
      return "queue_driven";
    case WorkloadKind::kMixed:
      return "mixed";
  }
  return "unknown";
}

WorkloadKind parse_workload_kind(std::string_view name) {
  if (name == "bursty") return WorkloadKind::kBursty;
  if (name == "queue_driven") return WorkloadKind::kQueueDriven;
  if (name == "mixed") return WorkloadKind::kMixed;
  throw ConfigError("workload.kind", "unknown workload kind '" + std::string(name) +
                                         "' (expected bursty, queue_driven or mixed)");
}

void WorkloadSpec::validate() const {
  if (!(base_rate >= 0.0) || !std::isfinite(base_rate)) {
    throw ConfigError("workload.base_rate", "must be finite and >= 0");
  }
  if (!(burst_amplitude >= 1.0)) throw ConfigError("workload.burst_amplitude", "must be >= 1");
  if (!(burst_interval > 0.0)) throw ConfigError("workload.burst_interval", "must be > 0");
  if (!(burst_duration >= 0.0) || burst_duration > burst_interval) {
    throw ConfigError("workload.burst_duration", "must lie in [0, burst_interval]");
  }
  if (!(burst_offset >= 0.0)) throw ConfigError("workload.burst_offset", "must be >= 0");
  if (!(batch_fraction >= 0.0 && batch_fraction <= 1.0)) {
    throw ConfigError("workload.batch_fraction", "must lie in [0, 1]");
  }
  if (kind == WorkloadKind::kMixed && batch_fraction > 0.0 && !(burst_duration > 0.0)) {
    throw ConfigError("workload.burst_duration", "must be > 0 when batches are injected");
  }
  if (!(noise_std >= 0.0)) throw ConfigError("workload.noise_std", "must be >= 0");
  double previous_end = 0.0;
  for (const RampSegment& r : ramps) {
    if (!(r.end > r.start) || r.start < previous_end) {
      throw ConfigError("workload.ramps", "segments must be non-empty and non-overlapping, in order");
    }
    if (!(r.rate >= 0.0)) throw ConfigError("workload.ramps", "segment rate must be >= 0");
    previous_end = r.end;
  }
}

bool in_burst_window(const WorkloadSpec& spec, double t) {
  if (t < spec.burst_offset) return false;
  const double phase = std::fmod(t - spec.burst_offset, spec.burst_interval);
  return phase < spec.burst_duration;
}

std::vector<double> burst_onsets(const WorkloadSpec& spec, double horizon) {
  std::vector<double> onsets;
  if (spec.kind != WorkloadKind::kBursty) return onsets;
  for (double onset = spec.burst_offset; onset + spec.burst_duration <= horizon;
       onset += spec.burst_interval) {
    onsets.push_back(onset);
  }
  return onsets;
}

namespace {

double ramp_rate(const WorkloadSpec& spec, double t) {
  double level = spec.base_rate;
  for (const RampSegment& r : spec.ramps) {
    if (t < r.start) break;
    if (t < r.end) return level + (r.rate - level) * (t - r.start) / (r.end - r.start);
    level = r.rate;
  }
  return level;
}

// Mean-one log-normal factor keyed on (seed, t) so arrivals stay a pure
// function of the tick.
double noise_factor(const WorkloadSpec& spec, double t) {
  if (spec.noise_std <= 0.0) return 1.0;
  const auto bits = std::bit_cast<std::uint64_t>(t);
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(bits), static_cast<std::uint32_t>(bits >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sigma = spec.noise_std;
  return std::exp(sigma * normal(rng) - 0.5 * sigma * sigma);
}

}  // namespace

double nominal_rate(const WorkloadSpec& spec, double t) {
  switch (spec.kind) {
    case WorkloadKind::kBursty:
      return spec.base_rate * (in_burst_window(spec, t) ? spec.burst_amplitude : 1.0);
    case WorkloadKind::kQueueDriven:
      return ramp_rate(spec, t);
    case WorkloadKind::kMixed: {
      const double interactive = (1.0 - spec.batch_fraction) * spec.base_rate;
      if (spec.batch_fraction <= 0.0 || !in_burst_window(spec, t)) return interactive;
      const double batch =
          spec.batch_fraction * spec.base_rate * spec.burst_interval / spec.burst_duration;
      return interactive + batch;
    }
  }
  throw std::logic_error("unhandled workload kind");
}

double arrivals_at(const WorkloadSpec& spec, double t, double dt) {
  if (!(t >= 0.0) || !(dt > 0.0)) throw std::invalid_argument("arrivals_at: need t >= 0, dt > 0");
  const double expected = nominal_rate(spec, t) * dt * noise_factor(spec, t);
  return std::max(0.0, std::round(expected));
}

}  // namespace sloscale
