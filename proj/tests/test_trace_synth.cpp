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

#include <cmath>
#include <filesystem>

#include <doctest.h>

#include "dkit/constants.hpp"
#include "dkit/errors.hpp"
#include "dkit/synth.hpp"
#include "dkit/trace.hpp"
#include "dkit/transmon_sim.hpp"

using namespace dkit;

TEST_CASE("t1 trace hits A/e + B at one decay constant") {
  DecayTraceParams p;
  p.T_us = 179.0;
  const auto trace =
      gen_decay_trace(TraceKind::T1, p, {0.0, 50.0, 179.0, 400.0}, 0.0, 1);
  CHECK(trace.signal[2] == doctest::Approx(0.5 * std::exp(-1.0) + 0.5).epsilon(1e-12));
  CHECK(trace.signal[0] == doctest::Approx(1.0));
}

TEST_CASE("ramsey zero crossings at 250 kHz are spaced 2 us") {
  DecayTraceParams p;
  p.T_us = 1e9;  // effectively undamped
  p.f_detune_MHz = 0.25;
  const auto delays = linspace(0.0, 12.0, 1201);  // 10 ns steps
  const auto trace = gen_decay_trace(TraceKind::Ramsey, p, delays, 0.0, 1);
  std::vector<double> crossings;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double a = trace.signal[i - 1] - p.offset;
    const double b = trace.signal[i] - p.offset;
    if (a > 0 != b > 0)
      crossings.push_back(trace.delays_us[i - 1] +
                          0.01 * a / (a - b));
  }
  REQUIRE(crossings.size() >= 5);
  CHECK(crossings[0] == doctest::Approx(1.0).epsilon(1e-3));
  for (std::size_t i = 1; i < crossings.size(); ++i)
    CHECK(crossings[i] - crossings[i - 1] == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("generators are bit-reproducible and bounded") {
  DecayTraceParams p;
  p.T_us = 100.0;
  const auto delays = linspace(0.0, 200.0, 100);
  const auto a = gen_decay_trace(TraceKind::Ramsey, p, delays, 0.05, 42);
  const auto b = gen_decay_trace(TraceKind::Ramsey, p, delays, 0.05, 42);
  CHECK(a.signal == b.signal);
  const auto c = gen_decay_trace(TraceKind::Ramsey, p, delays, 0.05, 43);
  CHECK(a.signal != c.signal);

  DecayTraceParams out_of_range;
  out_of_range.amplitude = 0.7;
  out_of_range.offset = 0.5;
  CHECK_THROWS_AS(gen_decay_trace(TraceKind::T1, out_of_range, delays, 0.0, 1),
                  DomainError);
}

TEST_CASE("echo pair branches mirror around the offset") {
  DecayTraceParams p;
  p.T_us = 116.0;
  const auto delays = linspace(0.0, 300.0, 50);
  const auto [plus, minus] = gen_echo_pair(p, delays, 0.0, 9);
  for (std::size_t i = 0; i < plus.size(); ++i)
    CHECK(plus.signal[i] - 0.5 == doctest::Approx(0.5 - minus.signal[i]).epsilon(1e-12));
}

TEST_CASE("trace csv round trip") {
  DecayTraceParams p;
  p.T_us = 50.0;
  const auto trace = gen_decay_trace(TraceKind::T1, p, linspace(0, 100, 40), 0.03, 4);
  const auto path = std::filesystem::temp_directory_path() / "dkit_trace_rt.csv";
  write_trace_csv(trace, path.string());
  const auto back = read_trace_csv(path.string());
  REQUIRE(back.size() == trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    CHECK(back.delays_us[i] == trace.delays_us[i]);
    CHECK(back.signal[i] == trace.signal[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("iq shots determinism and threshold") {
  const auto a = gen_iq_shots(4.1, 1000, 0.5, 11);
  const auto b = gen_iq_shots(4.1, 1000, 0.5, 11);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].i == b[i].i);
    CHECK(a[i].assigned_excited == (a[i].i > 0.0));
  }
  CHECK_THROWS_AS(gen_iq_shots(1.0, 0, 0.5, 1), DomainError);
}

TEST_CASE("driven transmon: two-level limits") {
  const double omega = kTwoPi * 2e6;  // full Rabi rate

  SUBCASE("resonant rate equals the drive amplitude") {
    const auto res = simulate_driven_transmon(2, -kTwoPi * 200e6, omega, 0.0, 3e-6);
    CHECK(res.rabi_rate_rad_s == doctest::Approx(omega).epsilon(0.002));
    CHECK(res.peak_population > 0.99);
  }

  SUBCASE("detuned rate is the generalized Rabi frequency") {
    const double delta = kTwoPi * 3e6;
    const auto res = simulate_driven_transmon(2, -kTwoPi * 200e6, omega, delta, 3e-6);
    const double expected = std::hypot(omega, delta);
    CHECK(res.rabi_rate_rad_s == doctest::Approx(expected).epsilon(0.005));
    CHECK(res.peak_population == doctest::Approx(omega * omega / (expected * expected))
                                     .epsilon(0.02));
  }
}

TEST_CASE("driven transmon: ten-level weak drive stays linear within 1%") {
  const double omega = kTwoPi * 2e6;
  const double alpha = -kTwoPi * 200e6;
  const auto res = simulate_driven_transmon(10, alpha, omega, 0.0, 3e-6);
  CHECK(std::fabs(res.rabi_rate_rad_s - omega) < 0.01 * omega);
}

TEST_CASE("driven transmon rejects unresolvable oscillations") {
  // Duration far below one Rabi period.
  CHECK_THROWS_AS(simulate_driven_transmon(2, -kTwoPi * 200e6, kTwoPi * 1e6, 0.0, 2e-7),
                  DomainError);
}
