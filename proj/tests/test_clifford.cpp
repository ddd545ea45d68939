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
#include <complex>
#include <vector>

#include <doctest.h>

#include "dkit/clifford.hpp"
#include "dkit/constants.hpp"
#include "dkit/rng.hpp"

using namespace dkit;

namespace {

using Unitary = CliffordGroup::Unitary;
using cd = std::complex<double>;

Unitary mul(const Unitary& a, const Unitary& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

bool equal_up_to_phase(const Unitary& a, const Unitary& b) {
  cd phase(0, 0);
  for (int i = 0; i < 4; ++i)
    if (std::abs(b[i]) > 1e-9) {
      phase = a[i] / b[i];
      break;
    }
  if (std::abs(std::abs(phase) - 1.0) > 1e-9) return false;
  for (int i = 0; i < 4; ++i)
    if (std::abs(a[i] - phase * b[i]) > 1e-9) return false;
  return true;
}

Unitary rx(double t) {
  return {cd(std::cos(t / 2), 0), cd(0, -std::sin(t / 2)),
          cd(0, -std::sin(t / 2)), cd(std::cos(t / 2), 0)};
}
Unitary rz(double t) {
  return {cd(std::cos(t / 2), -std::sin(t / 2)), cd(0, 0), cd(0, 0),
          cd(std::cos(t / 2), std::sin(t / 2))};
}

Unitary matrix_of_decomposition(const CompiledClifford& dec) {
  Unitary u = {cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0)};
  for (std::size_t k = 0; k < dec.pulses.size(); ++k) {
    u = mul(rz(dec.z_quarter_turns[k] * kPi / 2), u);
    u = mul(rx(dec.pulses[k] == PhysGate::X90 ? kPi / 2 : kPi), u);
  }
  u = mul(rz(dec.z_quarter_turns.back() * kPi / 2), u);
  return u;
}

}  // namespace

TEST_CASE("clifford group table is a group and matches matrix products") {
  const auto& g = CliffordGroup::instance();
  // Identity at index 0.
  for (int a = 0; a < kNumCliffords1Q; ++a) {
    CHECK(g.compose(0, a) == a);
    CHECK(g.compose(a, 0) == a);
    CHECK(g.compose(a, g.inverse(a)) == 0);
    CHECK(g.compose(g.inverse(a), a) == 0);
  }
  // Brute-force product check through the unitaries.
  for (int a = 0; a < kNumCliffords1Q; ++a)
    for (int b = 0; b < kNumCliffords1Q; ++b) {
      const Unitary prod = mul(g.unitary(b), g.unitary(a));  // apply a then b
      CHECK(equal_up_to_phase(prod, g.unitary(g.compose(a, b))));
    }
}

TEST_CASE("every clifford decomposes into <= 1 X pulse plus virtual Z") {
  const auto& g = CliffordGroup::instance();
  int total_pulses = 0;
  int zero_pulse = 0;
  for (int a = 0; a < kNumCliffords1Q; ++a) {
    const auto& dec = g.decomposition(a);
    CHECK(dec.physical_gate_count() <= 2);
    CHECK(equal_up_to_phase(matrix_of_decomposition(dec), g.unitary(a)));
    total_pulses += dec.physical_gate_count();
    if (dec.physical_gate_count() == 0) ++zero_pulse;
  }
  // Exhaustive enumeration: 4 frame-only Cliffords, the rest take exactly one
  // X-family pulse, so the average is 20/24 = 5/6.
  CHECK(zero_pulse == 4);
  CHECK(total_pulses == 20);
  CHECK(g.average_physical_gates() == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("compiled random sequences invert to the identity") {
  const auto& g = CliffordGroup::instance();

  const auto empty = g.compile_sequence({});
  CHECK(empty.inverse_clifford == 0);
  CHECK(empty.total_physical_gates == 0);

  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> seq(100);
    for (auto& s : seq) s = static_cast<int>(rng.below(kNumCliffords1Q));
    const auto compiled = g.compile_sequence(seq);
    // Group-table route.
    int cur = 0;
    for (int s : seq) cur = g.compose(cur, s);
    CHECK(g.compose(cur, compiled.inverse_clifford) == 0);
    // Matrix route.
    Unitary u = {cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0)};
    for (int s : seq) u = mul(g.unitary(s), u);
    u = mul(g.unitary(compiled.inverse_clifford), u);
    CHECK(equal_up_to_phase(u, {cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0)}));
  }
}

TEST_CASE("pauli conjugation table matches the unitaries") {
  const auto& g = CliffordGroup::instance();
  const Unitary paulis[4] = {{cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0)},
                             {cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0)},
                             {cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0)},
                             {cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0)}};
  for (int a = 0; a < kNumCliffords1Q; ++a) {
    CHECK(g.conjugate_pauli(a, 0) == 0);
    for (int p = 1; p < 4; ++p) {
      const Unitary& u = g.unitary(a);
      const Unitary ud = {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]),
                          std::conj(u[3])};
      const Unitary m = mul(mul(u, paulis[p]), ud);
      const int q = g.conjugate_pauli(a, p);
      // m == +/- pauli[q]
      bool plus = true, minus = true;
      for (int i = 0; i < 4; ++i) {
        if (std::abs(m[i] - paulis[q][i]) > 1e-9) plus = false;
        if (std::abs(m[i] + paulis[q][i]) > 1e-9) minus = false;
      }
      CHECK((plus || minus));
    }
  }
}
