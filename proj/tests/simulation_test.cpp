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


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sloscale/experiment.hpp"
#include "sloscale/serialize.hpp"
#include "sloscale/simulation.hpp"

using namespace sloscale;
namespace fs = std::filesystem;

namespace {

ScenarioConfig constant_load(double rate, int replicas) {
  ScenarioConfig s;
  s.name = "constant";
  s.horizon = 600.0;
  s.workload.kind = WorkloadKind::kBursty;
  s.workload.base_rate = rate;
  s.workload.burst_amplitude = 1.0;
  s.cluster.initial_nodes = 2;
  s.cluster.node_capacity = 8;
  s.cluster.initial_replicas = replicas;
  s.controller.min_replicas = 1;
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string serialized(const RunTrace& t) {
  std::ostringstream os;
  write_trace(os, t);
  write_decisions(os, t);
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sloscale_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("zero horizon yields an empty trace") {
  ScenarioConfig s = constant_load(10.0, 2);
  s.horizon = 0.0;
  const RunTrace t = run(s, ControllerKind::kSloAware);
  CHECK(t.rows.empty());
  CHECK(t.decisions.empty());
  s.tick = -1.0;
  CHECK_THROWS(run(s, ControllerKind::kSloAware));
}

TEST_CASE("without a controller replicas stay fixed") {
  const RunTrace t = run(constant_load(40.0, 6), ControllerKind::kNone);
  REQUIRE(t.rows.size() == 600);
  CHECK(t.decisions.empty());
  for (const TraceRow& r : t.rows) {
    CHECK(r.replicas() == 6);
    CHECK_FALSE(r.action.has_value());
  }
  CHECK(t.rows.back().t == doctest::Approx(600.0));
}

TEST_CASE("runs are deterministic for a fixed seed") {
  ScenarioConfig s = constant_load(80.0, 4);
  s.workload.noise_std = 0.3;
  s.workload.burst_amplitude = 3.0;
  s.workload.burst_offset = 100.0;
  s.workload.burst_duration = 60.0;
  s.workload.burst_interval = 200.0;
  s.seed = 9;
  for (ControllerKind k : {ControllerKind::kDefaultHpa, ControllerKind::kSloAware}) {
    CHECK(serialized(run(s, k)) == serialized(run(s, k)));
  }
  ScenarioConfig other = s;
  other.seed = 10;
  CHECK(serialized(run(s, ControllerKind::kSloAware)) !=
        serialized(run(other, ControllerKind::kSloAware)));
}

TEST_CASE("a node hint leaves pending replicas that new nodes absorb") {
  ScenarioConfig s = constant_load(200.0, 8);
  s.cluster.initial_nodes = 1;
  s.cluster.max_nodes = 6;
  s.controller.max_nodes = 6;
  s.controller.max_replicas = 60;
  const RunTrace t = run(s, ControllerKind::kSloAware);
  REQUIRE_FALSE(t.decisions.empty());
  const DecisionRecord& first = t.decisions.front();
  REQUIRE(first.action.node_capacity_hint.has_value());
  CHECK(*first.action.node_capacity_hint % s.cluster.node_capacity == 0);

  // First decision lands on tick 15 (row 14); the replicas beyond one node
  // are pending from that row until provisioned nodes become active.
  const TraceRow& decided = t.rows[14];
  REQUIRE(decided.decision_id == 0);
  CHECK(decided.pending > 0);
  CHECK(decided.nodes_active == 1);
  std::size_t activated = 15;
  while (activated < t.rows.size() && t.rows[activated].nodes_active == 1) ++activated;
  REQUIRE(activated < t.rows.size());
  CHECK(t.rows[activated].t - decided.t <= s.cluster.node_provision_delay + 1.0);
  CHECK(t.rows[activated].pending < t.rows[activated - 1].pending);
}

TEST_CASE("node count never exceeds max_nodes") {
  ScenarioConfig s = constant_load(900.0, 8);
  s.cluster.initial_nodes = 1;
  s.cluster.max_nodes = 3;
  s.controller.max_nodes = 3;
  s.controller.max_replicas = 200;
  for (ControllerKind k : {ControllerKind::kDefaultHpa, ControllerKind::kSloAware}) {
    const RunTrace t = run(s, k);
    for (const TraceRow& r : t.rows) CHECK(r.nodes_active <= 3);
    CHECK(t.rows.back().pending > 0);
  }
}

TEST_CASE("pipeline stages are ordered in every record") {
  ScenarioConfig s = constant_load(60.0, 2);
  s.workload.burst_amplitude = 4.0;
  s.workload.burst_offset = 100.0;
  s.workload.burst_duration = 90.0;
  s.workload.burst_interval = 300.0;
  const RunTrace t = run(s, ControllerKind::kSloAware);
  REQUIRE_FALSE(t.decisions.empty());
  for (const DecisionRecord& r : t.decisions) {
    CHECK(r.slo_demand <= r.backlog_adjusted);
    CHECK(r.pre_guardrail == r.backlog_adjusted);
    CHECK_FALSE(r.reason.empty());
  }
}

TEST_CASE("run_experiment writes one set of files per controller and seed") {
  ScenarioConfig s = constant_load(60.0, 4);
  s.name = "exp";
  s.workload.burst_amplitude = 3.0;
  s.workload.burst_offset = 100.0;
  s.workload.burst_duration = 60.0;
  s.workload.noise_std = 0.2;
  const fs::path out = fresh_dir("experiment");
  ExperimentOptions opt;
  opt.out_dir = out / "nested";
  opt.controllers = std::vector<ControllerKind>{
      ControllerKind::kDefaultHpa, ControllerKind::kTunedHpa, ControllerKind::kSloAware};
  opt.seed = 5;
  opt.repeats = 2;

  const ExperimentResult r = run_experiment(s, opt);
  CHECK(r.reports.size() == 3);
  for (const AggregateReport& a : r.reports) CHECK(a.runs == 2);
  REQUIRE(r.comparison.has_value());
  CHECK(r.comparison->baseline == "default_hpa");
  int traces = 0;
  int reports = 0;
  for (const fs::path& p : r.files) {
    CHECK(fs::exists(p));
    if (p.filename() == "trace.jsonl") ++traces;
    if (p.filename() == "report.json") ++reports;
  }
  CHECK(traces == 6);
  CHECK(reports == 6);
  CHECK(fs::exists(opt.out_dir / "exp" / "comparison.csv"));
  CHECK(fs::exists(opt.out_dir / "exp" / "slo_aware" / "6" / "decisions.jsonl"));

  std::vector<std::string> first;
  for (const fs::path& p : r.files) first.push_back(slurp(p));
  const ExperimentResult again = run_experiment(s, opt);
  REQUIRE(again.files == r.files);
  for (std::size_t i = 0; i < r.files.size(); ++i) CHECK(slurp(r.files[i]) == first[i]);

  // Every controller sees the same arrivals for a given seed.
  ScenarioConfig seeded = s;
  seeded.seed = 5;
  const RunTrace a = run(seeded, ControllerKind::kDefaultHpa);
  const RunTrace b = run(seeded, ControllerKind::kSloAware);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].arrivals == b.rows[i].arrivals);
  fs::remove_all(out);
}

TEST_CASE("a single controller produces no comparison") {
  ScenarioConfig s = constant_load(30.0, 3);
  s.name = "solo";
  const fs::path out = fresh_dir("solo");
  ExperimentOptions opt;
  opt.out_dir = out;
  opt.controllers = std::vector<ControllerKind>{ControllerKind::kSloAware};
  const ExperimentResult r = run_experiment(s, opt);
  CHECK(r.reports.size() == 1);
  CHECK_FALSE(r.comparison.has_value());
  CHECK_FALSE(fs::exists(out / "solo" / "comparison.csv"));
  fs::remove_all(out);
}

TEST_CASE("an unwritable output directory is an I/O error") {
  const fs::path out = fresh_dir("blocked");
  fs::create_directories(out);
  std::ofstream(out / "file") << "x";
  ExperimentOptions opt;
  opt.out_dir = out / "file";
  CHECK_THROWS_AS(run_experiment(constant_load(30.0, 3), opt), IoError);
  fs::remove_all(out);
}
