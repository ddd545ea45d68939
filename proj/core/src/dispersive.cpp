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

#include "dkit/dispersive.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dkit/errors.hpp"

namespace dkit {

namespace {
// Detunings closer to a pole than this are rejected instead of producing
// huge shifts.
constexpr double kSingularDetuningGHz = 1e-6;  // 1 kHz
}  // namespace

double chi_from_g_kHz(double g_MHz, double delta_GHz, double E_C_MHz) {
  if (g_MHz < 0.0) throw DomainError("chi_from_g: g must be >= 0");
  const double g = g_MHz * 1e-3;    // GHz
  const double ec = E_C_MHz * 1e-3;  // GHz
  if (std::fabs(delta_GHz) < kSingularDetuningGHz)
    throw DomainError("chi_from_g: detuning within 1 kHz of zero");
  if (std::fabs(delta_GHz - ec) < kSingularDetuningGHz)
    throw DomainError("chi_from_g: detuning within 1 kHz of the straddling pole (Delta = E_C)");
  const double chi_GHz = -(g * g) * ec / (delta_GHz * (delta_GHz - ec));
  return chi_GHz * 1e6;  // kHz
}

double n_crit(double delta_GHz, double g_MHz) {
  if (!(g_MHz > 0.0)) throw DomainError("n_crit: g must be positive");
  const double r = (delta_GHz * 1e3) / (2.0 * g_MHz);
  return r * r;
}

double ac_stark_shift(double chi, double n_bar) {
  if (n_bar < 0.0) throw DomainError("ac_stark_shift: n_bar must be >= 0");
  return 2.0 * chi * n_bar;
}

double steady_state_photons(double drive_amp, double kappa, double detuning) {
  if (!(kappa > 0.0)) throw DomainError("steady_state_photons: kappa must be positive");
  const double half_kappa = kappa / 2.0;
  return drive_amp * drive_amp / (half_kappa * half_kappa + detuning * detuning);
}

double measurement_dephasing_rate(double chi, double kappa, double n_g,
                                  double n_e, double drive_detuning) {
  if (!(kappa > 0.0)) throw DomainError("measurement_dephasing_rate: kappa must be positive");
  if (n_g < 0.0 || n_e < 0.0)
    throw DomainError("measurement_dephasing_rate: photon numbers must be >= 0");
  const double half_kappa = kappa / 2.0;
  const double det = drive_detuning - chi;
  return kappa * chi * chi * (n_e + n_g) /
         (half_kappa * half_kappa + chi * chi + det * det);
}

double resonant_excited_photons(double chi, double kappa, double n_g) {
  const double r = 4.0 * chi / kappa;
  return n_g / (1.0 + r * r);
}

double resonant_dephasing_rate(double chi, double kappa, double n_g) {
  if (!(kappa > 0.0)) throw DomainError("resonant_dephasing_rate: kappa must be positive");
  if (n_g < 0.0) throw DomainError("resonant_dephasing_rate: n_g must be >= 0");
  const double r = 4.0 * chi / kappa;
  return 8.0 * chi * chi * n_g / (kappa * (1.0 + r * r));
}

double photon_calibration_constant(double kappa, double chi, double K_slope) {
  if (chi == 0.0) throw DomainError("photon_calibration_constant: chi must be nonzero");
  if (!(kappa > 0.0)) throw DomainError("photon_calibration_constant: kappa must be positive");
  if (K_slope < 0.0) throw DomainError("photon_calibration_constant: K must be >= 0");
  const double r = 4.0 * chi / kappa;
  return kappa * (1.0 + r * r) * K_slope / (8.0 * chi * chi);
}

double pure_dephasing_time_us(double T1_us, double T2e_us) {
  if (!(T1_us > 0.0) || !(T2e_us > 0.0))
    throw DomainError("pure_dephasing_time: times must be positive");
  if (T2e_us > 2.0 * T1_us)
    throw DomainError("pure_dephasing_time: T2e > 2*T1 is unphysical (T2e=" +
                      std::to_string(T2e_us) + " us, T1=" + std::to_string(T1_us) + " us)");
  const double inv = 1.0 / T2e_us - 1.0 / (2.0 * T1_us);
  if (inv <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / inv;
}

double coherence_limited_epg(double T1_us, double T2e_us, double tau_g_ns) {
  if (!(T1_us > 0.0) || !(T2e_us > 0.0) || !(tau_g_ns > 0.0))
    throw DomainError("coherence_limited_epg: all inputs must be positive");
  const double tau_us = tau_g_ns * 1e-3;
  return (3.0 - std::exp(-tau_us / T1_us) - 2.0 * std::exp(-tau_us / T2e_us)) / 6.0;
}

}  // namespace dkit
