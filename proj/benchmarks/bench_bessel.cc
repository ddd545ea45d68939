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

#include "dkit/bessel.hpp"

static void BM_BesselK0_Series(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dkit::bessel_k0(x));
    x = x < 1.9 ? x + 1e-4 : 0.1;
  }
}
BENCHMARK(BM_BesselK0_Series);

static void BM_BesselK0_ContinuedFraction(benchmark::State& state) {
  double x = 2.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dkit::bessel_k0(x));
    x = x < 20.0 ? x + 1e-3 : 2.5;
  }
}
BENCHMARK(BM_BesselK0_ContinuedFraction);
