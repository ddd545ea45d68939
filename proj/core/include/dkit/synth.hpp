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

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dkit/trace.hpp"

namespace dkit {

// Ground-truth parameters for synthetic decay traces. The noiseless signal is
//   t1:         offset + amplitude exp(-t/T)
//   ramsey:     offset + amplitude cos(2 pi f t) exp(-t/T)
//   rabi:       offset - amplitude cos(2 pi f t) exp(-t/T)
//   echo_plus:  offset + amplitude exp(-t/T)
//   echo_minus: offset - amplitude exp(-t/T)
// and must stay inside [0, 1] before noise.
struct DecayTraceParams {
  double T_us = 100.0;
  double f_detune_MHz = 0.0;  // ramsey / rabi oscillation frequency
  double amplitude = 0.5;
  double offset = 0.5;
};

// Additive white Gaussian noise with the given sigma; bit-reproducible for a
// fixed seed.
TimeTrace gen_decay_trace(TraceKind kind, const DecayTraceParams& params,
                          const std::vector<double>& delays_us,
                          double noise_sigma, std::uint64_t seed);

// The +/- echo pair ("opposite phase on the final pi/2 pulse"); the two
// traces carry independent noise derived from the same seed.
std::pair<TimeTrace, TimeTrace> gen_echo_pair(const DecayTraceParams& params,
                                              const std::vector<double>& delays_us,
                                              double noise_sigma,
                                              std::uint64_t seed);

// Single-shot readout blobs: two circular unit-sigma Gaussian clusters
// separated by `separation_sigma` along I, thresholded at the midpoint.
struct IQShot {
  double i = 0.0;
  double q = 0.0;
  bool prepared_excited = false;
  bool assigned_excited = false;
};

std::vector<IQShot> gen_iq_shots(double separation_sigma, int n_shots,
                                 double excited_prob, std::uint64_t seed);

}  // namespace dkit
