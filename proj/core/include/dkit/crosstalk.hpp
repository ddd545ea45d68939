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
#include <vector>

#include "dkit/device.hpp"
#include "dkit/trace.hpp"

namespace dkit {

// Control-line selectivities phi_ij (power ratios, diagonal = 1) with the
// dB rendering 10 log10(phi) used in reports. Entries whose measured slope
// was consistent with zero are detection-floor upper bounds, not values.
struct SelectivityMatrix {
  enum class Kind { Qubit, Resonator };
  Kind kind = Kind::Qubit;
  int n = 0;
  std::vector<double> phi;                   // row-major
  std::vector<std::uint8_t> is_upper_bound;  // same shape
  bool validity_warning = false;  // resonator kind: |Delta_d| >> kappa, |chi| violated

  double at(int i, int j) const { return phi[static_cast<std::size_t>(i) * n + j]; }
  double db(int i, int j) const;
};

// phi_ij = (k_ij / k_jj)^2 from fitted Rabi-rate slopes.
// Throws DomainError for a non-positive diagonal slope.
SelectivityMatrix qubit_selectivity(const Matrix& k_slopes);

// phi_ij = (chi_jj / chi_ii) (k'_ij / k'_jj) from fitted AC-Stark slopes.
// When delta_d and the resonator linewidths are supplied, the detuned-drive
// validity condition |Delta_d| >> kappa, |chi| is checked and a warning flag
// set if violated. Throws DomainError for a zero diagonal chi.
SelectivityMatrix resonator_selectivity(const Matrix& k_prime_slopes,
                                        const std::vector<double>& chi_diag_kHz,
                                        double delta_d_MHz = 0.0,
                                        const std::vector<double>& kappa_total_kHz = {});

// |J_ij| < sqrt(min(phi_ij, phi_ji)) |Delta_ij|, in kHz. Equal qubit
// frequencies give a vacuous bound and are rejected.
Matrix bound_parasitic_J_kHz(const SelectivityMatrix& phi,
                             const std::vector<double>& omega_q_GHz);

// chi bound from a null Stark-shift measurement: resolution / (2 n_bar).
double bound_parasitic_chi_Hz(double freq_resolution_Hz, double n_bar_driven);

// J-mediated effective drive coupling, perturbative in the drive strength:
//   eps_J = eps_jj (J/Delta) [1 - 2 (eps_jj V / Delta)^2
//                               + 4 (eps_jj V)^2 / (Delta (2 Delta - alpha_j))]
// All rates rad/s; eps in rad/s per volt. validity_warning is set when
// |eps_jj V / Delta| > 0.3.
struct EpsilonJ {
  double value = 0.0;
  bool validity_warning = false;
};
EpsilonJ epsilon_J_perturbative(double eps_jj, double J, double delta_q,
                                double alpha_j, double V);

// Total induced Rabi rate per volt with interference phase:
//   [(eps_q)^2 + (eps_J)^2 + 2 eps_q eps_J cos(phase)]^(1/2)
double total_rabi_rate(double eps_q, double eps_J, double phase);

// Slope recovery from measured (drive, trace) sets. For Rabi sets the y-value
// is the oscillation rate 2 pi f; for Stark sets it is the fitted Ramsey
// angular frequency, so the slope is d(omega_AC)/d(drive) with the zero-drive
// detuning absorbed in the intercept.
struct DrivePoint {
  double drive = 0.0;  // generator voltage or power
  TimeTrace trace;
};
struct SlopeEstimate {
  double k = 0.0;      // rad/s per drive unit (delays in us are converted)
  double k_err = 0.0;
  bool consistent_with_zero = false;  // |k| < 2 sigma_k
};
SlopeEstimate rabi_rate_slope(const std::vector<DrivePoint>& points,
                              double sigma_ratio = 0.2);
SlopeEstimate stark_shift_slope(const std::vector<DrivePoint>& points,
                                double sigma_ratio = 0.2);

}  // namespace dkit
