// Copyright 2026 The Inertia Authors
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

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "inertia/analysis.hpp"
#include "inertia/inertial_solution.hpp"

namespace {

inertia::ProtocolParams reference(double factor, std::size_t n = 2000) {
  inertia::ProtocolParams p;
  p.alpha0 = 12.0 * std::numbers::pi;
  p.gamma = 100.0 * std::numbers::pi;
  p.mu0 = -1.0;
  p.delta = factor * p.alpha0;
  p.t_final = 0.2183195844743368;
  p.n_samples = n;
  return p;
}

void BM_Eigensystem(benchmark::State& state) {
  const auto basis = static_cast<inertia::Normalization>(state.range(0));
  double mu = -1.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inertia::eigensystem(mu, basis));
    mu = mu < -5.0 ? -0.1 : mu - 0.01;
  }
}
BENCHMARK(BM_Eigensystem)->Arg(0)->Arg(1);

void BM_Liouville(benchmark::State& state) {
  const auto p = reference(-0.05, static_cast<std::size_t>(state.range(0)));
  const auto v0 = inertia::initial_ground_vector(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inertia::integrate_liouville(p, v0));
  }
}
BENCHMARK(BM_Liouville)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Spinor(benchmark::State& state) {
  const auto p = reference(-0.05);
  const auto psi0 = inertia::initial_ground_state(p);
  inertia::IntegratorConfig cfg;
  cfg.spinor_scheme = static_cast<inertia::SpinorScheme>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(inertia::integrate_spinor(p, psi0, cfg));
  }
}
BENCHMARK(BM_Spinor)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Inertial(benchmark::State& state) {
  const auto p = reference(-0.05);
  const auto v0 = inertia::initial_ground_vector(p);
  const inertia::InertialOptions opts{state.range(0) != 0, inertia::Normalization::gap_scaled};
  for (auto _ : state) {
    benchmark::DoNotOptimize(inertia::inertial_propagate(p, v0, {}, opts));
  }
}
BENCHMARK(BM_Inertial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Corrected(benchmark::State& state) {
  const auto p = reference(-0.05);
  const auto v0 = inertia::initial_ground_vector(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inertia::corrected_propagate(p, v0));
  }
}
BENCHMARK(BM_Corrected)->Unit(benchmark::kMillisecond);

void BM_DistanceGrid(benchmark::State& state) {
  const auto base = reference(0.0, 200);
  std::vector<double> deltas;
  const auto n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) {
    deltas.push_back((-0.1 + 0.2 * i / (n - 1)) * base.alpha0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(inertia::distance_grid(base, deltas));
  }
}
BENCHMARK(BM_DistanceGrid)->Arg(11)->Arg(41)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
