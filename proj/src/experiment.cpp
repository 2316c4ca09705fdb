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

#include "sloscale/experiment.hpp"

#include <fstream>

#include "sloscale/serialize.hpp"
#include "sloscale/simulation.hpp"

namespace sloscale {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

template <typename Writer>
fs::path write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
  return path;
}

}  // namespace

ExperimentResult run_experiment(ScenarioConfig scenario, const ExperimentOptions& options) {
  if (options.controllers) scenario.controllers = *options.controllers;
  if (options.seed) {
    scenario.seed = *options.seed;
    scenario.workload.seed = *options.seed;
  }
  if (options.repeats) scenario.repeats = *options.repeats;
  scenario.validate();

  ExperimentResult result;
  const fs::path root = options.out_dir / scenario.name;
  ensure_dir(root);

  for (ControllerKind kind : scenario.controllers) {
    std::vector<MetricsReport> runs;
    for (int i = 0; i < scenario.repeats; ++i) {
      ScenarioConfig seeded = scenario;
      seeded.seed = scenario.seed + static_cast<std::uint64_t>(i);
      seeded.workload.seed = seeded.seed;
      const RunTrace trace = run(seeded, kind);
      const MetricsReport report = make_report(trace, seeded);

      const fs::path dir = root / std::string(to_string(kind)) / std::to_string(seeded.seed);
      ensure_dir(dir);
      result.files.push_back(
          write_file(dir / "trace.jsonl", [&](std::ostream& o) { write_trace(o, trace); }));
      result.files.push_back(
          write_file(dir / "decisions.jsonl", [&](std::ostream& o) { write_decisions(o, trace); }));
      result.files.push_back(write_file(
          dir / "report.json", [&](std::ostream& o) { o << to_json(report).dump(2) << '\n'; }));
      if (options.log) {
        *options.log << scenario.name << ' ' << to_string(kind) << " seed " << seeded.seed
                     << ": " << report_csv_row(report) << '\n';
      }
      runs.push_back(report);
    }
    result.reports.push_back(aggregate(runs));
  }

  if (result.reports.size() >= 2) {
    result.comparison = compare(std::span<const AggregateReport>(result.reports));
    result.files.push_back(write_file(root / "comparison.json", [&](std::ostream& o) {
      o << to_json(*result.comparison).dump(2) << '\n';
    }));
    result.files.push_back(write_file(root / "comparison.csv", [&](std::ostream& o) {
      o << comparison_csv(*result.comparison);
    }));
  }
  return result;
}

}  // namespace sloscale
