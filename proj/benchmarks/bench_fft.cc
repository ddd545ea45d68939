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

#include "dkit/fft.hpp"

static void BM_MagnitudeSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = std::cos(0.1 * i) + 0.2 * std::sin(0.37 * i);
  for (auto _ : state) benchmark::DoNotOptimize(dkit::magnitude_spectrum(x));
  state.SetComplexityN(n);
}
BENCHMARK(BM_MagnitudeSpectrum)->Arg(1024)->Arg(4096)->Arg(1000)->Arg(4097);
