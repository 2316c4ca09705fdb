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

#include <algorithm>
#include <cmath>
#include <random>

#include "sloscale/signals.hpp"

using namespace sloscale;

namespace {

ClusterState cluster_with(int ready) {
  ClusterConfig cfg;
  cfg.initial_nodes = 2;
  cfg.initial_replicas = ready;
  return make_cluster(cfg);
}

ForecastState primed(double level, double trend, double alpha, double beta) {
  ForecastState f;
  f.level = level;
  f.trend = trend;
  f.alpha = alpha;
  f.beta = beta;
  f.primed = true;
  return f;
}

}  // namespace

TEST_CASE("sample builds the state vector") {
  const ServiceModel m;
  SUBCASE("idle cluster") {
    Ewma filter;
    const SignalSnapshot s = sample(cluster_with(4), 0.0, m, filter);
    CHECK(s.latency == doctest::Approx(m.base_latency));
    CHECK(s.queue == 0.0);
    CHECK(s.utilization == 0.0);
    CHECK(s.pending == 0);
  }
  SUBCASE("exact saturation") {
    Ewma filter;
    const SignalSnapshot s = sample(cluster_with(4), 40.0, m, filter);
    CHECK(s.utilization == doctest::Approx(1.0));
    CHECK(s.ready_replicas == 4);
  }
  SUBCASE("no ready replicas") {
    Ewma filter;
    const SignalSnapshot s = sample(cluster_with(0), 40.0, m, filter);
    CHECK(std::isfinite(s.utilization));
    CHECK(s.utilization == kUtilizationCap);
    CHECK(s.latency == m.latency_cap);
    CHECK(s.error_rate == doctest::Approx(1.0));
  }
  SUBCASE("latency is smoothed across samples") {
    Ewma filter{0.5, std::nullopt};
    ClusterState c = cluster_with(4);
    sample(c, 0.0, m, filter);                          // 0.05
    const SignalSnapshot s = sample(c, 20.0, m, filter);  // raw 0.1
    CHECK(s.latency == doctest::Approx(0.075));
  }
}

TEST_CASE("ewma stays within the observed range") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(0.0, 100.0);
  std::uniform_real_distribution<double> alpha(0.01, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Ewma e{alpha(rng), std::nullopt};
    double lo = INFINITY;
    double hi = -INFINITY;
    for (int i = 0; i < 50; ++i) {
      const double x = value(rng);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      const double y = e.update(x);
      CHECK(y >= lo - 1e-12);
      CHECK(y <= hi + 1e-12);
    }
  }
}

TEST_CASE("holt update") {
  SUBCASE("first observation primes the level") {
    ForecastState f;
    f = forecast_update(f, 42.0);
    CHECK(f.primed);
    CHECK(f.level == 42.0);
    CHECK(f.trend == 0.0);
  }
  SUBCASE("constant input is a fixed point") {
    ForecastState f;
    for (int i = 0; i < 200; ++i) f = forecast_update(f, 80.0);
    CHECK(f.level == doctest::Approx(80.0));
    CHECK(std::abs(f.trend) < 1e-9);
  }
  SUBCASE("alpha one, beta zero copies the observation") {
    const ForecastState f = forecast_update(primed(10.0, 0.0, 1.0, 0.0), 25.0);
    CHECK(f.level == 25.0);
    CHECK(f.trend == 0.0);
  }
  SUBCASE("one step by hand") {
    // level' = 0.5*30 + 0.5*(20+2) = 26; trend' = 0.3*(26-20) + 0.7*2 = 3.2
    const ForecastState f = forecast_update(primed(20.0, 2.0, 0.5, 0.3), 30.0);
    CHECK(f.level == doctest::Approx(26.0));
    CHECK(f.trend == doctest::Approx(3.2));
  }
}

TEST_CASE("holt tracks a linear series") {
  const double k = 4.0;  // rate increase per step
  ForecastState f;
  f.alpha = 0.5;
  f.beta = 0.3;
  // Independent evaluation of the same recurrence.
  double level = 0.0;
  double trend = 0.0;
  for (int n = 0; n < 50; ++n) {
    const double obs = 100.0 + k * n;
    f = forecast_update(f, obs);
    if (n == 0) {
      level = obs;
    } else {
      const double prev = level;
      level = 0.5 * obs + 0.5 * (level + trend);
      trend = 0.3 * (level - prev) + 0.7 * trend;
    }
  }
  CHECK(f.level == doctest::Approx(level).epsilon(1e-12));
  CHECK(f.trend == doctest::Approx(trend).epsilon(1e-12));
  CHECK(std::abs(f.trend - k) / k < 0.05);
  CHECK(std::abs(f.level - (100.0 + k * 49)) / (100.0 + k * 49) < 0.05);
}

TEST_CASE("forecast horizon extrapolates linearly") {
  const ForecastState f = primed(100.0, 5.0, 0.5, 0.3);
  CHECK(forecast_horizon(f, 0.0, 15.0) == 100.0);
  CHECK(forecast_horizon(f, 45.0, 15.0) == doctest::Approx(115.0));
  CHECK(forecast_horizon(primed(100.0, 0.0, 0.5, 0.3), 600.0, 15.0) == 100.0);
  CHECK(forecast_horizon(primed(10.0, -5.0, 0.5, 0.3), 60.0, 15.0) == 0.0);
}
