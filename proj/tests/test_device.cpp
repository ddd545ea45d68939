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

#include <string>

#include <doctest.h>

#include "dkit/device.hpp"
#include "dkit/errors.hpp"
#include "dkit/report.hpp"

using namespace dkit;

namespace {

// A compact two-qubit device for loader tests.
DeviceParams make_device() {
  DeviceParams dev;
  dev.qubits = {{3.981, -199.0, 199.0, 69.0, 106.0, 95.0, 101.0, 13.0},
                {4.045, -199.0, 199.0, 71.0, 159.0, 104.0, 116.0, 18.0}};
  dev.resonators = {{7.968, 118.0, 110e3}, {8.083, 73.0, 75e3}};
  dev.pairs = {{124.0, -165.0, 3.981 - 7.968}, {126.0, -167.0, 4.045 - 8.083}};
  dev.J_kHz = {{0.0, 12.0}, {12.0, 0.0}};
  dev.chi_cross_Hz = {{0.0, 5.0}, {5.0, 0.0}};
  dev.eps_q = {{1.0, 0.003}, {0.004, 1.1}};
  dev.eps_r = {{1.0, 0.002}, {0.001, 0.9}};
  dev.lambda_q = {1.0, 1.0};
  dev.lambda_r = {1.0, 1.0};
  return dev;
}

}  // namespace

TEST_CASE("device json round trip") {
  const DeviceParams dev = make_device();
  const std::string text = device_to_json(dev);
  const DeviceParams back = parse_device_json(text, "roundtrip");
  CHECK(back.n() == 2);
  CHECK(back.qubits[0].omega_q_GHz == dev.qubits[0].omega_q_GHz);
  CHECK(back.pairs[1].chi_kHz == dev.pairs[1].chi_kHz);
  CHECK(back.pairs[0].delta_GHz == doctest::Approx(3.981 - 7.968));
  CHECK(back.eps_q == dev.eps_q);
  CHECK(*back.qubits[0].T1_us == 106.0);
}

TEST_CASE("derived resonator and pair quantities") {
  const DeviceParams dev = make_device();
  // kappa_total = kappa_ext + omega_r / Q_int, unit-consistent in kHz.
  CHECK(dev.resonators[0].kappa_total_kHz() ==
        doctest::Approx(118.0 + 7.968e6 / 110e3).epsilon(1e-12));
  CHECK(dev.pairs[0].n_crit() == doctest::Approx(258.0).epsilon(0.005));
}

TEST_CASE("loader rejects invariant violations with field diagnostics") {
  auto expect_rejects = [](DeviceParams dev, const std::string& needle) {
    const std::string text = device_to_json(dev);
    try {
      parse_device_json(text, "bad");
      FAIL_CHECK("expected ConfigError mentioning " << needle);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  DeviceParams positive_alpha = make_device();
  positive_alpha.qubits[1].alpha_MHz = 199.0;
  expect_rejects(positive_alpha, "qubits[1].alpha_MHz");

  DeviceParams bad_t2 = make_device();
  bad_t2.qubits[0].T2_echo_us = 300.0;  // > 2 T1
  expect_rejects(bad_t2, "T2_echo_us");

  DeviceParams asym = make_device();
  asym.J_kHz[0][1] = 15.0;
  expect_rejects(asym, "J_kHz");

  DeviceParams diag = make_device();
  diag.J_kHz[0][0] = 1.0;
  expect_rejects(diag, "J_kHz[0][0]");

  DeviceParams eps = make_device();
  eps.eps_q[1][1] = 0.0;
  expect_rejects(eps, "eps_q[1][1]");

  // chi sign inconsistent with the dispersive relation for this detuning.
  DeviceParams flipped = make_device();
  flipped.pairs[0].chi_kHz = +165.0;
  expect_rejects(flipped, "chi_kHz");
}

TEST_CASE("parse errors carry the origin") {
  try {
    parse_device_json("{", "broken.json");
    FAIL_CHECK("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
  }
}

TEST_CASE("device tables surface the chi consistency gap") {
  const DeviceParams dev = make_device();
  const std::string text = render_device_tables(dev);
  // Both the recorded and the model shift appear, with a signed deviation.
  CHECK(text.find("chi model") != std::string::npos);
  CHECK(text.find("%") != std::string::npos);
  CHECK(text.find("Tphi,e") != std::string::npos);
}
