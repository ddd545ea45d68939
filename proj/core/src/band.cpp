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

#include "dkit/band.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dkit/bessel.hpp"
#include "dkit/constants.hpp"
#include "dkit/errors.hpp"

namespace dkit {

using nlohmann::json;

void LatticeSpec::validate() const {
  if (!(a_mm > 0) || !(r_mm > 0) || !(a_mm > 2 * r_mm))
    throw ConfigError("lattice: requires a > 2r > 0");
  if (layers.empty()) throw ConfigError("lattice: at least one substrate layer required");
  for (const auto& [t, eps] : layers) {
    if (!(t > 0)) throw ConfigError("lattice: layer thickness must be positive");
    if (!(eps >= 1.0)) throw ConfigError("lattice: layer permittivity must be >= 1");
  }
}

double effective_permittivity(const std::vector<std::pair<double, double>>& layers) {
  if (layers.empty()) throw DomainError("effective_permittivity: no layers");
  double total = 0.0, weighted = 0.0;
  for (const auto& [t, eps] : layers) {
    total += t;
    weighted += t / eps;
  }
  return total / weighted;
}

double plasma_frequency_GHz(const LatticeSpec& spec) {
  spec.validate();
  const double log_ratio = std::log(spec.a_mm / spec.r_mm);
  if (log_ratio <= spec.C)
    throw DomainError("plasma_frequency: ln(a/r) <= C, geometry has no cutoff");
  const double eps = effective_permittivity(spec.layers);
  const double a_m = spec.a_mm * 1e-3;
  // f_a = sqrt(2) c / (2 a sqrt(eps))
  const double f_a = std::sqrt(2.0) * kSpeedOfLightMps / (2.0 * a_m * std::sqrt(eps));
  return f_a / std::sqrt(kPi * (log_ratio - spec.C)) / 1e9;
}

double band_curvature_GHz_mm2(double eps_eff, double omega_p_GHz) {
  if (!(eps_eff > 0) || !(omega_p_GHz > 0))
    throw DomainError("band_curvature: inputs must be positive");
  const double f_p = omega_p_GHz * 1e9;
  const double a_f = kSpeedOfLightMps * kSpeedOfLightMps /
                     (2.0 * eps_eff * kTwoPi * kTwoPi * f_p);  // Hz m^2
  return a_f * 1e-3;  // GHz mm^2
}

double skin_depth_mm(double eps_eff, double omega_c_GHz, double omega_q_GHz) {
  if (!(omega_c_GHz > 0) || omega_q_GHz < 0)
    throw DomainError("skin_depth: frequencies must be positive");
  if (omega_q_GHz >= 0.999 * omega_c_GHz)
    throw DomainError("skin_depth: qubit frequency at or above cutoff, coupling is not evanescent");
  const double fc = omega_c_GHz * 1e9, fq = omega_q_GHz * 1e9;
  const double delta_m = kSpeedOfLightMps /
                         (kTwoPi * std::sqrt(eps_eff * (fc * fc - fq * fq)));
  return delta_m * 1e3;
}

BandPrediction predict_band(const LatticeSpec& spec) {
  BandPrediction out;
  out.eps_eff = effective_permittivity(spec.layers);
  out.omega_p_GHz = plasma_frequency_GHz(spec);
  out.curvature_GHz_mm2 = band_curvature_GHz_mm2(out.eps_eff, out.omega_p_GHz);
  out.delta_p_mm = skin_depth_mm(out.eps_eff, out.omega_p_GHz, 0.0);
  out.asymptotic_db_per_2mm = asymptotic_db_drop(2.0, out.delta_p_mm);
  return out;
}

CouplingPoint coupling_profile(double d_mm, double d_ref_mm, double delta_p_mm) {
  if (!(d_mm > 0) || !(d_ref_mm > 0) || !(delta_p_mm > 0))
    throw DomainError("coupling_profile: distances must be positive");
  CouplingPoint p;
  p.relative_amplitude =
      bessel_k0(d_mm / delta_p_mm) / bessel_k0(d_ref_mm / delta_p_mm);
  p.db = 20.0 * std::log10(p.relative_amplitude);
  p.near_field = d_mm < 0.1 * delta_p_mm;
  return p;
}

double asymptotic_db_drop(double delta_d_mm, double delta_p_mm) {
  if (!(delta_p_mm > 0)) throw DomainError("asymptotic_db_drop: delta_p must be positive");
  return 20.0 * std::log10(std::exp(1.0)) * delta_d_mm / delta_p_mm;
}

std::vector<DispersionPoint> dispersion(const LatticeSpec& spec,
                                        const std::vector<double>& k_rad_per_mm) {
  const double eps = effective_permittivity(spec.layers);
  const double f_p = plasma_frequency_GHz(spec);
  const double a = band_curvature_GHz_mm2(eps, f_p);
  std::vector<DispersionPoint> out;
  out.reserve(k_rad_per_mm.size());
  for (double k : k_rad_per_mm) {
    if (k < 0) throw DomainError("dispersion: k must be >= 0");
    DispersionPoint p;
    p.k_rad_per_mm = k;
    p.f_pillar_GHz = f_p + a * k * k;
    p.f_free_GHz = kSpeedOfLightMps * (k * 1e3) / (kTwoPi * std::sqrt(eps)) / 1e9;
    out.push_back(p);
  }
  return out;
}

Matrix coupling_map_db(int grid, double spacing_mm, double delta_p_mm) {
  if (grid < 1) throw DomainError("coupling_map: grid must be >= 1");
  const int n = grid * grid;
  Matrix map(n, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
  for (int p = 0; p < n; ++p) {
    const int px = p % grid, py = p / grid;
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      const int qx = q % grid, qy = q / grid;
      const double d = spacing_mm * std::hypot(static_cast<double>(px - qx),
                                               static_cast<double>(py - qy));
      map[p][q] = coupling_profile(d, spacing_mm, delta_p_mm).db;
    }
  }
  return map;
}

LatticeSpec parse_lattice_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  LatticeSpec spec;
  try {
    if (j.contains("a_mm")) spec.a_mm = j.at("a_mm").get<double>();
    if (j.contains("r_mm")) spec.r_mm = j.at("r_mm").get<double>();
    if (j.contains("C")) spec.C = j.at("C").get<double>();
    if (j.contains("layers")) {
      spec.layers.clear();
      for (const auto& layer : j.at("layers"))
        spec.layers.emplace_back(layer.at("thickness_um").get<double>(),
                                 layer.at("eps_rel").get<double>());
    }
    if (j.contains("reference")) {
      const auto& r = j.at("reference");
      if (r.contains("cutoff_GHz"))
        spec.reference_cutoff_GHz = r.at("cutoff_GHz").get<double>();
      if (r.contains("curvature_GHz_mm2"))
        spec.reference_curvature_GHz_mm2 = r.at("curvature_GHz_mm2").get<double>();
      if (r.contains("band_top_GHz"))
        spec.reference_band_top_GHz = r.at("band_top_GHz").get<double>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  spec.validate();
  return spec;
}

LatticeSpec load_lattice_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open lattice spec");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lattice_json(ss.str(), path);
}

std::string lattice_to_json(const LatticeSpec& spec) {
  json j;
  j["a_mm"] = spec.a_mm;
  j["r_mm"] = spec.r_mm;
  j["C"] = spec.C;
  for (const auto& [t, eps] : spec.layers)
    j["layers"].push_back({{"thickness_um", t}, {"eps_rel", eps}});
  if (spec.reference_cutoff_GHz || spec.reference_curvature_GHz_mm2 ||
      spec.reference_band_top_GHz) {
    json r;
    if (spec.reference_cutoff_GHz) r["cutoff_GHz"] = *spec.reference_cutoff_GHz;
    if (spec.reference_curvature_GHz_mm2)
      r["curvature_GHz_mm2"] = *spec.reference_curvature_GHz_mm2;
    if (spec.reference_band_top_GHz) r["band_top_GHz"] = *spec.reference_band_top_GHz;
    j["reference"] = r;
  }
  return j.dump(2) + "\n";
}

}  // namespace dkit
