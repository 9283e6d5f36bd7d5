// Copyright 2026 The ctqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "ctqd/designer.hpp"
#include "ctqd/linalg.hpp"
#include "ctqd/scan.hpp"
#include "ctqd/simulator.hpp"

namespace ctqd {
namespace {

SPPulsePair r43_pair() {
  SPPulsePair p;
  p.shape = PulseShape::gaussian(2.381, 1.0);
  p.detuning = 0.2802;
  p.theta_s = 0.5237;
  return p;
}

Sequence r43() {
  HierarchySpec h;
  h.n2 = 2;
  h.n3 = 3;
  h.level3 = Level3Mode::kPC;
  return design_sequence(h, r43_pair());
}

void BM_MatExpHermitian3(benchmark::State& state) {
  ErrorModel e;
  const ComplexMatrix h = build_hamiltonian(r43_pair(), e, 2.7);
  for (auto _ : state) benchmark::DoNotOptimize(mat_exp(h, 1e-3));
}
BENCHMARK(BM_MatExpHermitian3);

void BM_PropagatePair(benchmark::State& state) {
  PropagationConfig cfg;
  cfg.steps_per_pair = static_cast<int>(state.range(0));
  ErrorModel e;
  e.stokes_amp = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(propagate_pair(r43_pair(), e, cfg));
}
BENCHMARK(BM_PropagatePair)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ScanPointR43(benchmark::State& state) {
  const Sequence s = r43();
  ScanConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_point(s.pairs, cfg, 0.1, -0.1));
}
BENCHMARK(BM_ScanPointR43)->Unit(benchmark::kMillisecond);

void BM_Level2Numeric(benchmark::State& state) {
  SolverOptions opts;
  opts.restarts = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(level2_phases_numeric(1.029, 0.5, static_cast<int>(state.range(0)), opts));
  }
}
BENCHMARK(BM_Level2Numeric)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Level3PcNumeric(benchmark::State& state) {
  SolverOptions opts;
  opts.restarts = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(level3_pc_numeric(0.5, static_cast<int>(state.range(0)), kHalfPi, opts));
  }
}
BENCHMARK(BM_Level3PcNumeric)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Level3FcNumeric(benchmark::State& state) {
  SolverOptions opts;
  opts.restarts = 8;
  const TargetState t;
  for (auto _ : state) {
    benchmark::DoNotOptimize(level3_fc_numeric(t, static_cast<int>(state.range(0)), kHalfPi, opts));
  }
}
BENCHMARK(BM_Level3FcNumeric)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ctqd

BENCHMARK_MAIN();
