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

namespace dkit {

// Closed-form dispersive-model relations for a transmon coupled to a readout
// resonator. Frequencies are ordinary frequencies; functions whose formula is
// homogeneous in its rate arguments accept any consistent rate unit and
// return the same unit.

// Dispersive shift from a transverse coupling:
//   chi = -g^2 E_C / (Delta (Delta - E_C)), Delta = omega_q - omega_r.
// Throws DomainError when |Delta| or |Delta - E_C| is below 1 kHz.
double chi_from_g_kHz(double g_MHz, double delta_GHz, double E_C_MHz);

// Critical photon number (Delta / 2g)^2. Throws DomainError for g <= 0.
double n_crit(double delta_GHz, double g_MHz);

// AC Stark shift 2 * chi * n_bar. Same unit as chi.
double ac_stark_shift(double chi, double n_bar);

// Steady-state photon number of a driven resonator,
//   n = (eps V)^2 / ((kappa/2)^2 + detuning^2),
// with drive amplitude eps*V, total linewidth kappa and drive detuning from
// the dressed resonator frequency, all in one consistent rate unit.
double steady_state_photons(double drive_amp, double kappa, double detuning);

// Measurement-induced dephasing rate for a drive detuned by
// drive_detuning = omega_d - omega_r from the bare resonator:
//   kappa chi^2 (n_e + n_g) / ((kappa/2)^2 + chi^2 + (drive_detuning - chi)^2)
double measurement_dephasing_rate(double chi, double kappa, double n_g,
                                  double n_e, double drive_detuning);

// Resonant-drive (omega_d = omega_r) special case,
//   8 chi^2 n_g / (kappa [1 + (4 chi / kappa)^2]),
// which substitutes n_e = n_g / [1 + (4 chi / kappa)^2].
double resonant_dephasing_rate(double chi, double kappa, double n_g);
double resonant_excited_photons(double chi, double kappa, double n_g);

// Photon-number calibration constant c such that n_g = c * P when the fitted
// dephasing-vs-power slope is K (Gamma_m = K * P):
//   c = kappa [1 + (4 chi / kappa)^2] K / (8 chi^2)
// Throws DomainError for chi == 0.
double photon_calibration_constant(double kappa, double chi, double K_slope);

// Pure echoed dephasing time from 1/T_phi = 1/T2e - 1/(2 T1). Returns +inf
// when T2e == 2 T1 (relaxation limited); throws DomainError when T2e > 2 T1.
double pure_dephasing_time_us(double T1_us, double T2e_us);

// Coherence-limited error per gate for a gate of period tau_g:
//   (3 - exp(-tau_g/T1) - 2 exp(-tau_g/T2e)) / 6
double coherence_limited_epg(double T1_us, double T2e_us, double tau_g_ns);

}  // namespace dkit
