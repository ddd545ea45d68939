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

#include "dkit/device.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dkit/dispersive.hpp"
#include "dkit/errors.hpp"

namespace dkit {

using nlohmann::json;

double PairCoupling::n_crit() const { return dkit::n_crit(delta_GHz, g_MHz); }

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& field,
                       const std::string& why) {
  throw ConfigError(origin + ": " + field + ": " + why);
}

double require_number(const json& j, const std::string& origin,
                      const std::string& field) {
  if (!j.contains(field)) fail(origin, field, "missing required field");
  const json& v = j.at(field);
  if (!v.is_number()) fail(origin, field, "expected a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& j, const std::string& origin,
                                      const std::string& field) {
  if (!j.contains(field)) return std::nullopt;
  const json& v = j.at(field);
  if (!v.is_number()) fail(origin, field, "expected a number");
  return v.get<double>();
}

Matrix require_matrix(const json& j, const std::string& origin,
                      const std::string& field, std::size_t n) {
  if (!j.contains(field)) fail(origin, field, "missing required field");
  const json& v = j.at(field);
  if (!v.is_array() || v.size() != n)
    fail(origin, field, "expected an array of " + std::to_string(n) + " rows");
  Matrix m;
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = v.at(r);
    if (!row.is_array() || row.size() != n)
      fail(origin, field + "[" + std::to_string(r) + "]",
           "expected a row of " + std::to_string(n) + " numbers");
    m.push_back(row.get<std::vector<double>>());
  }
  return m;
}

std::vector<double> require_vector(const json& j, const std::string& origin,
                                   const std::string& field, std::size_t n) {
  if (!j.contains(field)) fail(origin, field, "missing required field");
  const json& v = j.at(field);
  if (!v.is_array() || v.size() != n)
    fail(origin, field, "expected an array of " + std::to_string(n) + " numbers");
  return v.get<std::vector<double>>();
}

}  // namespace

void DeviceParams::validate() const {
  const std::string origin = "device";
  const std::size_t nq = qubits.size();
  if (nq == 0) fail(origin, "qubits", "at least one qubit required");
  if (resonators.size() != nq) fail(origin, "resonators", "length must match qubits");
  if (pairs.size() != nq) fail(origin, "pairs", "length must match qubits");

  for (std::size_t i = 0; i < nq; ++i) {
    const auto tag = [&](const char* f) {
      return "qubits[" + std::to_string(i) + "]." + f;
    };
    const QubitParams& q = qubits[i];
    if (!(q.omega_q_GHz > 0)) fail(origin, tag("omega_q_GHz"), "must be positive");
    if (!(q.alpha_MHz < 0)) fail(origin, tag("alpha_MHz"), "must be negative");
    if (!(q.E_C_MHz > 0)) fail(origin, tag("E_C_MHz"), "must be positive");
    if (!(q.E_J_over_E_C > 0)) fail(origin, tag("E_J_over_E_C"), "must be positive");
    if (q.T1_us && q.T2_echo_us && *q.T2_echo_us > 2.0 * *q.T1_us)
      fail(origin, tag("T2_echo_us"), "must satisfy T2_echo <= 2*T1");

    const ResonatorParams& r = resonators[i];
    const auto rtag = [&](const char* f) {
      return "resonators[" + std::to_string(i) + "]." + f;
    };
    if (!(r.omega_r_GHz > 0)) fail(origin, rtag("omega_r_GHz"), "must be positive");
    if (r.kappa_ext_kHz < 0) fail(origin, rtag("kappa_ext_kHz"), "must be >= 0");
    if (!(r.Q_int > 0)) fail(origin, rtag("Q_int"), "must be positive");

    const PairCoupling& p = pairs[i];
    const auto ptag = [&](const char* f) {
      return "pairs[" + std::to_string(i) + "]." + f;
    };
    if (p.g_MHz < 0) fail(origin, ptag("g_MHz"), "must be >= 0");
    // chi sign must be the one produced by the dispersive relation for this
    // detuning; magnitudes may disagree (measured vs derived).
    if (p.g_MHz > 0) {
      const double chi_model = chi_from_g_kHz(p.g_MHz, p.delta_GHz, q.E_C_MHz);
      if (chi_model * p.chi_kHz < 0)
        fail(origin, ptag("chi_kHz"),
             "sign inconsistent with the dispersive relation for this detuning");
    }
  }

  if (J_kHz.size() != nq) fail(origin, "J_kHz", "must be n x n");
  for (std::size_t i = 0; i < nq; ++i) {
    if (J_kHz[i].size() != nq) fail(origin, "J_kHz", "must be n x n");
    if (J_kHz[i][i] != 0.0)
      fail(origin, "J_kHz[" + std::to_string(i) + "][" + std::to_string(i) + "]",
           "diagonal must be zero");
    for (std::size_t k = 0; k < nq; ++k)
      if (std::fabs(J_kHz[i][k] - J_kHz[k][i]) > 1e-12)
        fail(origin, "J_kHz", "must be symmetric");
  }
  if (chi_cross_Hz.size() != nq) fail(origin, "chi_cross_Hz", "must be n x n");
  for (const auto& row : chi_cross_Hz)
    if (row.size() != nq) fail(origin, "chi_cross_Hz", "must be n x n");

  for (const auto* eps : {&eps_q, &eps_r}) {
    const char* name = (eps == &eps_q) ? "eps_q" : "eps_r";
    if (eps->size() != nq) fail(origin, name, "must be n x n");
    for (std::size_t i = 0; i < nq; ++i) {
      if ((*eps)[i].size() != nq) fail(origin, name, "must be n x n");
      if (!((*eps)[i][i] > 0))
        fail(origin, std::string(name) + "[" + std::to_string(i) + "][" +
                         std::to_string(i) + "]",
             "diagonal must be positive");
    }
  }
  if (lambda_q.size() != nq) fail(origin, "lambda_q", "length must match qubits");
  if (lambda_r.size() != nq) fail(origin, "lambda_r", "length must match qubits");
}

DeviceParams parse_device_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  DeviceParams dev;
  if (!j.contains("qubits") || !j.at("qubits").is_array())
    fail(origin, "qubits", "missing required array");
  if (!j.contains("resonators") || !j.at("resonators").is_array())
    fail(origin, "resonators", "missing required array");
  if (!j.contains("pairs") || !j.at("pairs").is_array())
    fail(origin, "pairs", "missing required array");

  const std::size_t nq = j.at("qubits").size();
  for (std::size_t i = 0; i < nq; ++i) {
    const json& q = j.at("qubits").at(i);
    const std::string tag = origin + " qubits[" + std::to_string(i) + "]";
    QubitParams qp;
    qp.omega_q_GHz = require_number(q, tag, "omega_q_GHz");
    qp.alpha_MHz = require_number(q, tag, "alpha_MHz");
    qp.E_C_MHz = require_number(q, tag, "E_C_MHz");
    qp.E_J_over_E_C = require_number(q, tag, "E_J_over_E_C");
    qp.T1_us = optional_number(q, tag, "T1_us");
    qp.T2_star_us = optional_number(q, tag, "T2_star_us");
    qp.T2_echo_us = optional_number(q, tag, "T2_echo_us");
    qp.p_e_percent = optional_number(q, tag, "p_e_percent");
    dev.qubits.push_back(qp);
  }
  if (j.at("resonators").size() != nq) fail(origin, "resonators", "length must match qubits");
  if (j.at("pairs").size() != nq) fail(origin, "pairs", "length must match qubits");
  for (std::size_t i = 0; i < nq; ++i) {
    const json& r = j.at("resonators").at(i);
    const std::string tag = origin + " resonators[" + std::to_string(i) + "]";
    ResonatorParams rp;
    rp.omega_r_GHz = require_number(r, tag, "omega_r_GHz");
    rp.kappa_ext_kHz = require_number(r, tag, "kappa_ext_kHz");
    rp.Q_int = require_number(r, tag, "Q_int");
    dev.resonators.push_back(rp);

    const json& p = j.at("pairs").at(i);
    const std::string ptag = origin + " pairs[" + std::to_string(i) + "]";
    PairCoupling pc;
    pc.g_MHz = require_number(p, ptag, "g_MHz");
    pc.chi_kHz = require_number(p, ptag, "chi_kHz");
    pc.delta_GHz = dev.qubits[i].omega_q_GHz - rp.omega_r_GHz;
    dev.pairs.push_back(pc);
  }

  dev.J_kHz = require_matrix(j, origin, "J_kHz", nq);
  dev.chi_cross_Hz = require_matrix(j, origin, "chi_cross_Hz", nq);
  dev.eps_q = require_matrix(j, origin, "eps_q_rad_per_sV", nq);
  dev.eps_r = require_matrix(j, origin, "eps_r_rad_per_sV", nq);
  dev.lambda_q = require_vector(j, origin, "lambda_q", nq);
  dev.lambda_r = require_vector(j, origin, "lambda_r", nq);

  dev.validate();
  return dev;
}

DeviceParams load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open device file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_device_json(ss.str(), path);
}

std::string device_to_json(const DeviceParams& dev) {
  json j;
  for (const auto& q : dev.qubits) {
    json jq{{"omega_q_GHz", q.omega_q_GHz},
            {"alpha_MHz", q.alpha_MHz},
            {"E_C_MHz", q.E_C_MHz},
            {"E_J_over_E_C", q.E_J_over_E_C}};
    if (q.T1_us) jq["T1_us"] = *q.T1_us;
    if (q.T2_star_us) jq["T2_star_us"] = *q.T2_star_us;
    if (q.T2_echo_us) jq["T2_echo_us"] = *q.T2_echo_us;
    if (q.p_e_percent) jq["p_e_percent"] = *q.p_e_percent;
    j["qubits"].push_back(jq);
  }
  for (const auto& r : dev.resonators) {
    j["resonators"].push_back({{"omega_r_GHz", r.omega_r_GHz},
                               {"kappa_ext_kHz", r.kappa_ext_kHz},
                               {"Q_int", r.Q_int}});
  }
  for (const auto& p : dev.pairs) {
    j["pairs"].push_back({{"g_MHz", p.g_MHz}, {"chi_kHz", p.chi_kHz}});
  }
  j["J_kHz"] = dev.J_kHz;
  j["chi_cross_Hz"] = dev.chi_cross_Hz;
  j["eps_q_rad_per_sV"] = dev.eps_q;
  j["eps_r_rad_per_sV"] = dev.eps_r;
  j["lambda_q"] = dev.lambda_q;
  j["lambda_r"] = dev.lambda_r;
  return j.dump(2) + "\n";
}

void save_device(const DeviceParams& dev, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << device_to_json(dev);
}

}  // namespace dkit
