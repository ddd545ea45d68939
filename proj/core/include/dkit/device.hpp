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

#include <optional>
#include <string>
#include <vector>

namespace dkit {

using Matrix = std::vector<std::vector<double>>;

struct QubitParams {
  double omega_q_GHz = 0.0;
  double alpha_MHz = 0.0;  // negative for a transmon
  double E_C_MHz = 0.0;
  double E_J_over_E_C = 0.0;
  std::optional<double> T1_us;
  std::optional<double> T2_star_us;
  std::optional<double> T2_echo_us;
  // Residual excited-state population. Recorded as opaque metadata; nothing
  // in the toolkit derives it.
  std::optional<double> p_e_percent;
};

struct ResonatorParams {
  double omega_r_GHz = 0.0;
  double kappa_ext_kHz = 0.0;
  double Q_int = 0.0;

  double kappa_int_kHz() const { return omega_r_GHz * 1e6 / Q_int; }
  double kappa_total_kHz() const { return kappa_ext_kHz + kappa_int_kHz(); }
};

// Coupling between qubit i and its own readout resonator.
struct PairCoupling {
  double g_MHz = 0.0;
  double chi_kHz = 0.0;   // measured dispersive shift
  double delta_GHz = 0.0; // omega_q - omega_r, derived on load

  double n_crit() const;
};

struct DeviceParams {
  std::vector<QubitParams> qubits;
  std::vector<ResonatorParams> resonators;
  std::vector<PairCoupling> pairs;

  Matrix J_kHz;            // parasitic qubit-qubit transverse coupling
  Matrix chi_cross_Hz;     // parasitic qubit x resonator dispersive shifts
  Matrix eps_q;            // qubit control-line couplings, rad/s per volt
  Matrix eps_r;            // resonator control-line couplings, rad/s per volt
  std::vector<double> lambda_q;  // line attenuation factors
  std::vector<double> lambda_r;

  int n() const { return static_cast<int>(qubits.size()); }

  // Checks every structural invariant; throws ConfigError naming the field.
  void validate() const;
};

// JSON with explicit unit-suffixed keys (omega_q_GHz, chi_kHz, ...). Loading
// validates invariants and rejects with a field diagnostic.
DeviceParams load_device(const std::string& path);
DeviceParams parse_device_json(const std::string& text, const std::string& origin);
std::string device_to_json(const DeviceParams& dev);
void save_device(const DeviceParams& dev, const std::string& path);

}  // namespace dkit
