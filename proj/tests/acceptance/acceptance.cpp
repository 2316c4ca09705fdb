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


// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sloscale/metrics.hpp"
#include "sloscale/scenario.hpp"
#include "sloscale/simulation.hpp"
#include "support/checks.hpp"

using namespace sloscale;

namespace {

struct ScenarioRuns {
  ScenarioConfig scenario;
  std::map<ControllerKind, MetricsReport> reports;
  double slowest_run = 0.0;  // seconds
};

ScenarioRuns run_all(const std::filesystem::path& path) {
  ScenarioRuns out{load_scenario(path), {}, 0.0};
  for (ControllerKind kind : {ControllerKind::kDefaultHpa, ControllerKind::kTunedHpa,
                              ControllerKind::kSloAware}) {
    const auto start = std::chrono::steady_clock::now();
    const RunTrace trace = run(out.scenario, kind);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    out.slowest_run = std::max(out.slowest_run, took.count());
    out.reports[kind] = make_report(trace, out.scenario);
  }
  return out;
}

double reduction_of(double base, double value) { return base > 0.0 ? (base - value) / base : 0.0; }

int failures = 0;

std::ostringstream detail_stream() {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  return os;
}

void report(int number, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL") << "  " << detail
            << '\n';
}

std::string describe(const checks::Outcome& o, const std::string& name) {
  std::ostringstream os = detail_stream();
  os << name << " " << o.cases << (o.ok ? " ok" : " FAILED (" + o.failure + ")");
  return os.str();
}

}  // namespace

int main() {
  const std::filesystem::path dir = SLOSCALE_SCENARIO_DIR;
  const ScenarioRuns bursty = run_all(dir / "bursty.json");
  const ScenarioRuns mixed = run_all(dir / "mixed.json");
  const ScenarioRuns queue = run_all(dir / "queue_driven.json");

  using K = ControllerKind;
  {
    const double d = bursty.reports.at(K::kDefaultHpa).slo_violation_duration;
    const double t = bursty.reports.at(K::kTunedHpa).slo_violation_duration;
    const double p = bursty.reports.at(K::kSloAware).slo_violation_duration;
    const double red = reduction_of(d, p);
    const bool between = p < t && t < d;
    const double slowest =
        std::max({bursty.slowest_run, mixed.slowest_run, queue.slowest_run});
    std::ostringstream os = detail_stream();
    os << "bursty SLO duration default " << d << " s, tuned " << t << " s, proposed " << p
       << " s; reduction " << std::setprecision(1) << red * 100.0 << std::setprecision(3) << "% (need >= 20%); tuned strictly between: "
       << (between ? "yes" : "no") << "; slowest run " << slowest << " s (need < 10 s)";
    report(1, red >= 0.20 && between && slowest < 10.0, os.str());
  }
  {
    const auto d = bursty.reports.at(K::kDefaultHpa).mean_time_to_scale;
    const auto p = bursty.reports.at(K::kSloAware).mean_time_to_scale;
    const double red = d && p ? reduction_of(*d, *p) : 0.0;
    std::ostringstream os = detail_stream();
    os << "bursty time-to-scale default " << d.value_or(-1) << " s, proposed " << p.value_or(-1)
       << " s; reduction " << std::setprecision(1) << red * 100.0 << std::setprecision(3) << "% (need >= 15%)";
    report(2, d && p && red >= 0.15, os.str());
  }
  {
    const MetricsReport& d = mixed.reports.at(K::kDefaultHpa);
    const MetricsReport& p = mixed.reports.at(K::kSloAware);
    const double ratio = p.node_hours / d.node_hours;
    const double slo = reduction_of(d.slo_violation_duration, p.slo_violation_duration);
    std::ostringstream os = detail_stream();
    os << "mixed node-hours default " << d.node_hours << ", proposed " << p.node_hours
       << " (ratio " << ratio << ", need <= 0.90); SLO duration reduction "
       << std::setprecision(1) << slo * 100.0 << std::setprecision(3)
       << "% (need >= 20%)";
    report(3, ratio <= 0.90 && slo >= 0.20, os.str());
  }
  {
    bool pass = true;
    std::ostringstream os = detail_stream();
    os << "oscillations proposed/tuned:";
    for (const ScenarioRuns* s : {&bursty, &mixed, &queue}) {
      const int p = s->reports.at(K::kSloAware).oscillation_count;
      const int t = s->reports.at(K::kTunedHpa).oscillation_count;
      pass = pass && p <= 1.10 * t;
      os << ' ' << s->scenario.name << ' ' << p << '/' << t;
    }
    report(4, pass, os.str());
  }
  {
    const checks::Outcome guard = checks::guardrail_sequences(1000);
    const checks::ClusterWalk walk = checks::cluster_walks(1000);
    const checks::Outcome floor = checks::cost_floor_minimality(1000);
    const checks::SweepResult sweep =
        checks::sweep(checks::sweep_scenarios({bursty.scenario, mixed.scenario, queue.scenario}));
    const bool pass = guard.ok && walk.conservation.ok && walk.placement.ok && floor.ok &&
                      sweep.determinism.ok && sweep.audit.bounds.ok && sweep.audit.steps.ok &&
                      sweep.audit.cooldown.ok && sweep.audit.explainability.ok;
    std::ostringstream os = detail_stream();
    os << describe(guard, "guardrail sequences") << "; "
       << describe(walk.conservation, "conservation walks") << "; "
       << describe(walk.placement, "placement walks") << "; "
       << describe(floor, "cost-floor cases") << "; "
       << describe(sweep.determinism, "deterministic runs") << "; "
       << describe(sweep.audit.bounds, "bounded decisions") << "; "
       << describe(sweep.audit.steps, "step-safe decisions") << "; "
       << describe(sweep.audit.cooldown, "cooldown-checked changes") << "; "
       << describe(sweep.audit.explainability, "explained changes");
    report(5, pass, os.str());
  }
  {
    const checks::Outcome hpa = checks::hpa_ratio_grid();
    const checks::Outcome latency = checks::latency_closed_form();
    const checks::Outcome forecast = checks::forecast_linear_convergence();
    report(6, hpa.ok && latency.ok && forecast.ok,
           describe(hpa, "hpa grid points") + "; " + describe(latency, "latency cases") + "; " +
               describe(forecast, "linear series"));
  }
  {
    const checks::Outcome metrics = checks::metric_oracles(10);
    report(7, metrics.ok, describe(metrics, "randomized traces"));
  }
  return failures == 0 ? 0 : 1;
}
