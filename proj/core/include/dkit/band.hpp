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
#include <utility>
#include <vector>

#include "dkit/device.hpp"

namespace dkit {

// Wire-medium (pillar lattice) plasma model of the shunted enclosure.
struct LatticeSpec {
  double a_mm = 2.0;   // pillar spacing
  double r_mm = 0.25;  // pillar radius
  double C = 1.31;     // lattice constant factor
  // Substrate stack between the enclosure plates: (thickness um, eps_rel).
  std::vector<std::pair<double, double>> layers = {{475.0, 11.45}, {125.0, 1.0}};

  // Externally computed reference values (e.g. finite-element results) kept
  // for comparison in reports; never used in the model itself.
  std::optional<double> reference_cutoff_GHz;
  std::optional<double> reference_curvature_GHz_mm2;
  std::optional<double> reference_band_top_GHz;

  void validate() const;
};

struct BandPrediction {
  double eps_eff = 0.0;
  double omega_p_GHz = 0.0;
  double curvature_GHz_mm2 = 0.0;
  double delta_p_mm = 0.0;
  double asymptotic_db_per_2mm = 0.0;
};

// Thickness-weighted series permittivity (sum t_i) / (sum t_i / eps_i).
double effective_permittivity(const std::vector<std::pair<double, double>>& layers);

// Plasma cutoff omega_p = omega_a / sqrt(pi [ln(a/r) - C]) with
// omega_a = sqrt(2) pi / (a sqrt(mu0 eps0 eps_r)). Throws DomainError when
// ln(a/r) <= C (no cutoff for this geometry).
double plasma_frequency_GHz(const LatticeSpec& spec);

// Quadratic band curvature A with omega_k = omega_p + A k^2,
// A = 1 / (2 mu0 eps0 eps_r omega_p), reported as A/2pi in GHz mm^2.
double band_curvature_GHz_mm2(double eps_eff, double omega_p_GHz);

// Plasma skin depth 1 / sqrt(mu0 eps0 eps_r (omega_c^2 - omega_q^2)).
// Throws DomainError when omega_q >= 0.999 omega_c (coupling not evanescent).
double skin_depth_mm(double eps_eff, double omega_c_GHz, double omega_q_GHz);

BandPrediction predict_band(const LatticeSpec& spec);

// Cavity-mediated coupling vs separation, J proportional to K0(d / delta_p),
// normalized to a reference separation; dB is 20 log10 of the amplitude
// ratio. near_field flags d below ~0.1 delta_p where the lattice model has
// no meaning.
struct CouplingPoint {
  double relative_amplitude = 0.0;
  double db = 0.0;
  bool near_field = false;
};
CouplingPoint coupling_profile(double d_mm, double d_ref_mm, double delta_p_mm);

// Large-separation drop of the amplitude in dB per delta_d of added
// separation: 20 log10(e) * delta_d / delta_p.
double asymptotic_db_drop(double delta_d_mm, double delta_p_mm);

// omega(k) with and without the pillar lattice, k in rad/mm:
// with:    f = f_p + A k^2 (quadratic model around the cutoff)
// without: f = c k / (2 pi sqrt(eps_r))
struct DispersionPoint {
  double k_rad_per_mm = 0.0;
  double f_pillar_GHz = 0.0;
  double f_free_GHz = 0.0;
};
std::vector<DispersionPoint> dispersion(const LatticeSpec& spec,
                                        const std::vector<double>& k_rad_per_mm);

// Pairwise coupling map of an n x n qubit grid (spacing between neighbors),
// dB relative to the nearest-neighbor separation; diagonal entries are NaN.
Matrix coupling_map_db(int grid, double spacing_mm, double delta_p_mm);

// JSON round trip for LatticeSpec.
LatticeSpec load_lattice_spec(const std::string& path);
LatticeSpec parse_lattice_json(const std::string& text, const std::string& origin);
std::string lattice_to_json(const LatticeSpec& spec);

}  // namespace dkit
