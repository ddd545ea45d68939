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

#include <cmath>
#include <vector>

#include "dkit/fit.hpp"
#include "dkit/synth.hpp"
#include "dkit/trace.hpp"

static void BM_FitExpDecay(benchmark::State& state) {
  dkit::DecayTraceParams params;
  params.T_us = 116.0;
  const auto delays = dkit::linspace(0.0, 350.0, 200);
  const auto trace = dkit::gen_decay_trace(dkit::TraceKind::T1, params, delays, 0.02, 7);
  for (auto _ : state) benchmark::DoNotOptimize(dkit::fit_exp_decay(trace));
}
BENCHMARK(BM_FitExpDecay);

static void BM_FitRBCurve(benchmark::State& state) {
  std::vector<int> lengths;
  std::vector<double> means;
  for (int i = 0; i < 31; ++i) {
    const int m = 1 + i * 80;
    lengths.push_back(m);
    means.push_back(0.5 + 0.5 * std::pow(0.9992, m));
  }
  for (auto _ : state) benchmark::DoNotOptimize(dkit::fit_rb_curve(lengths, means));
}
BENCHMARK(BM_FitRBCurve);
