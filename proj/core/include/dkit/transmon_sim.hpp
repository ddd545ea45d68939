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

#include "dkit/trace.hpp"

namespace dkit {

struct DrivenTransmonResult {
  double rabi_rate_rad_s = 0.0;  // dominant population-oscillation rate
  double peak_population = 0.0;
  TimeTrace population;  // sampled excited-state population vs time (us)
};

// Multi-level transmon driven through its own line, integrated in the frame
// rotating at the drive frequency (RWA): fixed-step RK4 with
// dt <= 1/(200 * max transition frequency). drive_amp is the full two-level
// resonant Rabi rate (the drive matrix element is drive_amp / 2);
// detuning = omega_q - omega_d. All rates in rad/s.
// Throws DomainError when the oscillation cannot be extracted (duration must
// cover at least ~3 periods).
DrivenTransmonResult simulate_driven_transmon(int levels, double alpha_rad_s,
                                              double drive_amp_rad_s,
                                              double detuning_rad_s,
                                              double duration_s);

// Two transmons coupled by J (a1+ a2 + a1 a2+), with the drive applied to
// transmon 2 at the frequency of transmon 1 (no direct drive on transmon 1).
// Reports the slow J-mediated oscillation induced on transmon 1.
// delta_q = omega_q1 - omega_q2. The product space is truncated to the
// max_states lowest bare-energy states.
DrivenTransmonResult simulate_driven_transmon_pair(int levels, int max_states,
                                                   double alpha1_rad_s,
                                                   double alpha2_rad_s,
                                                   double delta_q_rad_s,
                                                   double J_rad_s,
                                                   double drive_amp_rad_s,
                                                   double duration_s);

}  // namespace dkit
