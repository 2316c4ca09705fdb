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

#include "sloscale/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "sloscale/error.hpp"

namespace sloscale {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Walks one JSON object, type-checking the keys it is asked for and
// remembering them so finish() can reject everything else.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected a JSON object");
    }
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json& child(const std::string& key) {
    if (!has(key)) throw ConfigError(join(path_, key), "missing required field");
    seen_.insert(key);
    return obj_.at(key);
  }

  template <typename T>
  void required(const std::string& key, T& out) {
    if (!has(key)) throw ConfigError(join(path_, key), "missing required field");
    optional(key, out);
  }

  void optional(const std::string& key, double& out) {
    if (const json* v = lookup(key)) {
      if (!v->is_number()) throw ConfigError(join(path_, key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(join(path_, key), "must be finite");
    }
  }

  void optional(const std::string& key, int& out) {
    if (const json* v = lookup(key)) {
      if (!v->is_number_integer()) throw ConfigError(join(path_, key), "expected an integer");
      const auto value = v->get<long long>();
      if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
        throw ConfigError(join(path_, key), "integer out of range");
      }
      out = static_cast<int>(value);
    }
  }

  void optional(const std::string& key, std::uint64_t& out) {
    if (const json* v = lookup(key)) {
      if (!v->is_number_unsigned()) {
        throw ConfigError(join(path_, key), "expected a non-negative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void optional(const std::string& key, std::string& out) {
    if (const json* v = lookup(key)) {
      if (!v->is_string()) throw ConfigError(join(path_, key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    std::vector<std::string> unknown;
    for (const auto& item : obj_.items()) {
      if (!seen_.count(item.key())) unknown.push_back(item.key());
    }
    if (unknown.empty()) return;
    std::ostringstream os;
    os << "unknown key(s):";
    for (const auto& k : unknown) os << ' ' << k;
    throw ConfigError(join(path_, unknown.front()), os.str());
  }

  const std::string& path() const { return path_; }

 private:
  const json* lookup(const std::string& key) {
    if (!has(key)) return nullptr;
    seen_.insert(key);
    return &obj_.at(key);
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

WorkloadSpec parse_workload(const json& doc) {
  ObjectReader r(doc, "workload");
  WorkloadSpec w;
  std::string kind;
  r.required("kind", kind);
  w.kind = parse_workload_kind(kind);
  r.optional("base_rate", w.base_rate);
  r.optional("burst_amplitude", w.burst_amplitude);
  r.optional("burst_duration", w.burst_duration);
  r.optional("burst_interval", w.burst_interval);
  r.optional("burst_offset", w.burst_offset);
  r.optional("batch_fraction", w.batch_fraction);
  r.optional("noise_std", w.noise_std);
  if (r.has("ramps")) {
    const json& ramps = r.child("ramps");
    if (!ramps.is_array()) throw ConfigError("workload.ramps", "expected an array");
    for (std::size_t i = 0; i < ramps.size(); ++i) {
      ObjectReader seg(ramps[i], "workload.ramps[" + std::to_string(i) + "]");
      RampSegment s;
      seg.required("start", s.start);
      seg.required("end", s.end);
      seg.required("rate", s.rate);
      seg.finish();
      w.ramps.push_back(s);
    }
  }
  r.finish();
  return w;
}

ServiceModel parse_service(const json& doc) {
  ObjectReader r(doc, "service");
  ServiceModel m;
  r.optional("per_replica_rate", m.per_replica_rate);
  r.optional("base_latency", m.base_latency);
  r.optional("latency_cap", m.latency_cap);
  r.finish();
  return m;
}

ClusterConfig parse_cluster(const json& doc) {
  ObjectReader r(doc, "cluster");
  ClusterConfig c;
  r.optional("initial_nodes", c.initial_nodes);
  r.optional("initial_replicas", c.initial_replicas);
  r.optional("node_capacity", c.node_capacity);
  r.optional("max_nodes", c.max_nodes);
  r.optional("pod_start_delay", c.pod_start_delay);
  r.optional("node_provision_delay", c.node_provision_delay);
  r.optional("node_idle_timeout", c.node_idle_timeout);
  r.optional("pending_trigger_delay", c.pending_trigger_delay);
  r.finish();
  return c;
}

ControllerConfig parse_controller(const json* doc, const ClusterConfig& cluster) {
  ControllerConfig c;
  c.max_nodes = cluster.max_nodes;
  c.forecast_horizon = cluster.pod_start_delay;
  if (!doc) return c;
  ObjectReader r(*doc, "controller");
  r.optional("min_replicas", c.min_replicas);
  r.optional("max_replicas", c.max_replicas);
  r.optional("control_interval", c.control_interval);
  r.optional("slo_latency_target", c.slo_latency_target);
  r.optional("cpu_target", c.cpu_target);
  r.optional("tolerance_band", c.tolerance_band);
  r.optional("max_step_up", c.max_step_up);
  r.optional("max_step_down", c.max_step_down);
  r.optional("scale_up_stabilization", c.scale_up_stabilization);
  r.optional("scale_down_stabilization", c.scale_down_stabilization);
  r.optional("cooldown_after_scale_up", c.cooldown_after_scale_up);
  r.optional("drain_window", c.drain_window);
  r.optional("target_utilization", c.target_utilization);
  r.optional("forecast_alpha", c.forecast_alpha);
  r.optional("forecast_beta", c.forecast_beta);
  r.optional("forecast_horizon", c.forecast_horizon);
  r.optional("latency_smoothing", c.latency_smoothing);
  r.optional("cost_per_replica_hour", c.cost_per_replica_hour);
  r.optional("cost_per_node_hour", c.cost_per_node_hour);
  r.optional("max_nodes", c.max_nodes);
  r.finish();
  return c;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void ScenarioConfig::validate() const {
  if (name.empty()) throw ConfigError("name", "must be non-empty");
  if (name.find_first_of("/\\") != std::string::npos || name == "." || name == "..") {
    throw ConfigError("name", "must be usable as a directory name");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("horizon", "must be > 0");
  if (!(tick > 0.0) || !std::isfinite(tick)) throw ConfigError("tick", "must be > 0");
  if (repeats < 1) throw ConfigError("repeats", "must be >= 1");
  if (controllers.empty()) throw ConfigError("controllers", "must list at least one controller");
  workload.validate();
  service.validate();
  cluster.validate();
  controller.validate();
  const double steps = controller.control_interval / tick;
  if (std::abs(steps - std::round(steps)) > 1e-9 || std::round(steps) < 1.0) {
    throw ConfigError("controller.control_interval",
                      "control_interval " + format_number(controller.control_interval) +
                          " is not a positive multiple of tick " + format_number(tick));
  }
  if (controller.min_replicas > cluster.max_nodes * cluster.node_capacity) {
    throw ConfigError("controller.min_replicas", "exceeds total slots on max_nodes nodes");
  }
}

std::size_t ScenarioConfig::tick_count() const {
  return static_cast<std::size_t>(std::floor(horizon / tick + 1e-9));
}

std::size_t ScenarioConfig::ticks_per_decision() const {
  return static_cast<std::size_t>(std::llround(controller.control_interval / tick));
}

ScenarioConfig parse_scenario(const json& doc) {
  ObjectReader r(doc, "");
  int schema = 0;
  r.required("schema", schema);
  if (schema != kScenarioSchema) {
    throw ConfigError("schema", "unsupported schema version " + std::to_string(schema) +
                                    " (expected " + std::to_string(kScenarioSchema) + ")");
  }
  ScenarioConfig s;
  r.required("name", s.name);
  r.optional("horizon", s.horizon);
  r.optional("tick", s.tick);
  r.optional("seed", s.seed);
  r.optional("repeats", s.repeats);
  s.workload = parse_workload(r.child("workload"));
  if (r.has("service")) s.service = parse_service(r.child("service"));
  if (r.has("cluster")) s.cluster = parse_cluster(r.child("cluster"));
  s.controller = parse_controller(r.has("controller") ? &r.child("controller") : nullptr, s.cluster);
  if (!r.has("cluster") || !doc.at("cluster").contains("initial_replicas")) {
    s.cluster.initial_replicas = std::min(s.controller.min_replicas,
                                          s.cluster.initial_nodes * s.cluster.node_capacity);
  }
  if (r.has("controllers")) {
    const json& list = r.child("controllers");
    if (!list.is_array()) throw ConfigError("controllers", "expected an array of names");
    s.controllers.clear();
    for (const json& item : list) {
      if (!item.is_string()) throw ConfigError("controllers", "expected controller names");
      s.controllers.push_back(parse_controller_kind(item.get<std::string>()));
    }
  }
  r.finish();
  s.workload.seed = s.seed;
  s.validate();
  return s;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

json to_json(const ScenarioConfig& s) {
  json ramps = json::array();
  for (const RampSegment& r : s.workload.ramps) {
    ramps.push_back({{"start", r.start}, {"end", r.end}, {"rate", r.rate}});
  }
  json controllers = json::array();
  for (ControllerKind k : s.controllers) controllers.push_back(std::string(to_string(k)));
  const ControllerConfig& c = s.controller;
  return {
      {"schema", kScenarioSchema},
      {"name", s.name},
      {"horizon", s.horizon},
      {"tick", s.tick},
      {"seed", s.seed},
      {"repeats", s.repeats},
      {"workload",
       {{"kind", std::string(to_string(s.workload.kind))},
        {"base_rate", s.workload.base_rate},
        {"burst_amplitude", s.workload.burst_amplitude},
        {"burst_duration", s.workload.burst_duration},
        {"burst_interval", s.workload.burst_interval},
        {"burst_offset", s.workload.burst_offset},
        {"batch_fraction", s.workload.batch_fraction},
        {"noise_std", s.workload.noise_std},
        {"ramps", ramps}}},
      {"service",
       {{"per_replica_rate", s.service.per_replica_rate},
        {"base_latency", s.service.base_latency},
        {"latency_cap", s.service.latency_cap}}},
      {"cluster",
       {{"initial_nodes", s.cluster.initial_nodes},
        {"initial_replicas", s.cluster.initial_replicas},
        {"node_capacity", s.cluster.node_capacity},
        {"max_nodes", s.cluster.max_nodes},
        {"pod_start_delay", s.cluster.pod_start_delay},
        {"node_provision_delay", s.cluster.node_provision_delay},
        {"node_idle_timeout", s.cluster.node_idle_timeout},
        {"pending_trigger_delay", s.cluster.pending_trigger_delay}}},
      {"controller",
       {{"min_replicas", c.min_replicas},
        {"max_replicas", c.max_replicas},
        {"control_interval", c.control_interval},
        {"slo_latency_target", c.slo_latency_target},
        {"cpu_target", c.cpu_target},
        {"tolerance_band", c.tolerance_band},
        {"max_step_up", c.max_step_up},
        {"max_step_down", c.max_step_down},
        {"scale_up_stabilization", c.scale_up_stabilization},
        {"scale_down_stabilization", c.scale_down_stabilization},
        {"cooldown_after_scale_up", c.cooldown_after_scale_up},
        {"drain_window", c.drain_window},
        {"target_utilization", c.target_utilization},
        {"forecast_alpha", c.forecast_alpha},
        {"forecast_beta", c.forecast_beta},
        {"forecast_horizon", c.forecast_horizon},
        {"latency_smoothing", c.latency_smoothing},
        {"cost_per_replica_hour", c.cost_per_replica_hour},
        {"cost_per_node_hour", c.cost_per_node_hour},
        {"max_nodes", c.max_nodes}}},
      {"controllers", controllers},
  };
}

}  // namespace sloscale
