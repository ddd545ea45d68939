// Copyright 2026 The dispersive-kit authors
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

#include "dkit/rb_sim.hpp"

static void BM_SimulateRB(benchmark::State& state) {
  dkit::RBConfig cfg;
  cfg.n_qubits = 4;
  cfg.lengths = {1, 4, 16, 64, 256, 1024};
  cfg.seeds = static_cast<int>(state.range(0));
  cfg.shots = 1000;
  cfg.noise.eps = {{1, 4e-4}, {2, 4e-4}, {4, 4e-4}, {8, 4e-4}};
  cfg.readout_error = {0.02};
  cfg.master_seed = 11;
  cfg.jobs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(dkit::simulate_rb(cfg));
}
BENCHMARK(BM_SimulateRB)->Arg(8)->Arg(32);
