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

#include "dkit/clifford.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "dkit/constants.hpp"
#include "dkit/errors.hpp"

namespace dkit {

namespace {

using Unitary = CliffordGroup::Unitary;
using cd = std::complex<double>;

Unitary mul(const Unitary& a, const Unitary& b) {
  // (a * b): apply b first, then a.
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Unitary dagger(const Unitary& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

// Canonical representative up to global phase: rotate so the first entry
// with non-negligible magnitude becomes real positive.
Unitary canonicalize(const Unitary& u) {
  for (const auto& z : u) {
    const double m = std::abs(z);
    if (m > 1e-6) {
      const cd phase = std::conj(z) / m;
      return {u[0] * phase, u[1] * phase, u[2] * phase, u[3] * phase};
    }
  }
  throw DomainError("clifford: zero matrix");
}

std::string key_of(const Unitary& u) {
  const Unitary c = canonicalize(u);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%+.6f%+.6f%+.6f%+.6f%+.6f%+.6f%+.6f%+.6f",
                c[0].real(), c[0].imag(), c[1].real(), c[1].imag(),
                c[2].real(), c[2].imag(), c[3].real(), c[3].imag());
  // Normalize "-0.000000" so keys are stable.
  std::string s(buf);
  std::size_t pos = 0;
  while ((pos = s.find("-0.000000", pos)) != std::string::npos) s[pos] = '+';
  return s;
}

Unitary rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {cd(c, 0), cd(0, -s), cd(0, -s), cd(c, 0)};
}

Unitary rz(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {cd(c, -s), cd(0, 0), cd(0, 0), cd(c, s)};
}

const std::array<Unitary, 4> kPaulis = {
    Unitary{cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0)},    // I
    Unitary{cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0)},    // X
    Unitary{cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0)},   // Y
    Unitary{cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0)}};  // Z

}  // namespace

CliffordGroup::CliffordGroup() {
  // Breadth-first closure over the generators gives a stable indexing with
  // the identity at index 0.
  const Unitary x90 = rx(kPi / 2);
  const Unitary z90 = rz(kPi / 2);

  std::vector<Unitary> elements;
  std::map<std::string, int> index;
  elements.push_back({cd(1, 0), cd(0, 0), cd(0, 0), cd(1, 0)});
  index[key_of(elements[0])] = 0;
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const Unitary* gen : {&x90, &z90}) {
      const Unitary next = mul(*gen, elements[head]);
      const std::string k = key_of(next);
      if (!index.count(k)) {
        index[k] = static_cast<int>(elements.size());
        elements.push_back(canonicalize(next));
      }
    }
  }
  if (elements.size() != kNumCliffords1Q)
    throw DomainError("clifford: closure did not produce 24 elements");
  for (int g = 0; g < kNumCliffords1Q; ++g) unitaries_[g] = elements[g];

  for (int a = 0; a < kNumCliffords1Q; ++a)
    for (int b = 0; b < kNumCliffords1Q; ++b)
      table_[a][b] = index.at(key_of(mul(unitaries_[a], unitaries_[b])));

  for (int g = 0; g < kNumCliffords1Q; ++g) {
    inverse_[g] = index.at(key_of(dagger(unitaries_[g])));
    conj_[g][0] = 0;
    for (int p = 1; p < 4; ++p) {
      const Unitary m = mul(mul(unitaries_[g], kPaulis[p]), dagger(unitaries_[g]));
      int found = -1;
      for (int q = 1; q < 4; ++q) {
        // tr(m sigma_q) / 2 is +/-1 for the matching Pauli, 0 otherwise.
        const cd tr = (mul(m, kPaulis[q])[0] + mul(m, kPaulis[q])[3]) / 2.0;
        if (std::abs(std::abs(tr) - 1.0) < 1e-9) {
          found = q;
          break;
        }
      }
      if (found < 0) throw DomainError("clifford: conjugation is not a Pauli");
      conj_[g][p] = found;
    }
  }

  // Minimal-pulse decomposition over {X90, X180} with free virtual Z
  // quarter-turns, found by exhaustive search in increasing pulse count.
  const std::array<Unitary, 4> zq = {rz(0), rz(kPi / 2), rz(kPi), rz(3 * kPi / 2)};
  const Unitary x180 = rx(kPi);
  long total_pulses = 0;
  for (int g = 0; g < kNumCliffords1Q; ++g) {
    const std::string target = key_of(unitaries_[g]);
    CompiledClifford dec;
    bool found = false;
    for (int a = 0; a < 4 && !found; ++a) {
      if (key_of(zq[a]) == target) {
        dec.pulses = {};
        dec.z_quarter_turns = {a};
        found = true;
      }
    }
    for (int pulse = 0; pulse < 2 && !found; ++pulse) {
      const PhysGate pg = pulse == 0 ? PhysGate::X90 : PhysGate::X180;
      const Unitary& pu = pulse == 0 ? x90 : x180;
      for (int a = 0; a < 4 && !found; ++a)
        for (int b = 0; b < 4 && !found; ++b)
          if (key_of(mul(zq[b], mul(pu, zq[a]))) == target) {
            dec.pulses = {pg};
            dec.z_quarter_turns = {a, b};
            found = true;
          }
    }
    for (int p1 = 0; p1 < 2 && !found; ++p1)
      for (int p2 = 0; p2 < 2 && !found; ++p2) {
        const Unitary& u1 = p1 == 0 ? x90 : x180;
        const Unitary& u2 = p2 == 0 ? x90 : x180;
        for (int a = 0; a < 4 && !found; ++a)
          for (int b = 0; b < 4 && !found; ++b)
            for (int c = 0; c < 4 && !found; ++c)
              if (key_of(mul(zq[c], mul(u2, mul(zq[b], mul(u1, zq[a]))))) == target) {
                dec.pulses = {p1 == 0 ? PhysGate::X90 : PhysGate::X180,
                              p2 == 0 ? PhysGate::X90 : PhysGate::X180};
                dec.z_quarter_turns = {a, b, c};
                found = true;
              }
      }
    if (!found) throw DomainError("clifford: no decomposition within two pulses");
    total_pulses += dec.physical_gate_count();
    decomps_[g] = std::move(dec);
  }
  avg_physical_gates_ = static_cast<double>(total_pulses) / kNumCliffords1Q;
}

const CliffordGroup& CliffordGroup::instance() {
  static const CliffordGroup group;
  return group;
}

CliffordGroup::CompiledSequence CliffordGroup::compile_sequence(
    const std::vector<int>& sequence) const {
  CompiledSequence out;
  int cur = 0;
  for (int idx : sequence) {
    if (idx < 0 || idx >= kNumCliffords1Q)
      throw DomainError("compile_sequence: clifford index out of range");
    cur = compose(cur, idx);
    const int gates = decomps_[idx].physical_gate_count();
    out.gates_per_element.push_back(gates);
    out.total_physical_gates += gates;
  }
  out.inverse_clifford = inverse_[cur];
  const int inv_gates = decomps_[out.inverse_clifford].physical_gate_count();
  out.gates_per_element.push_back(inv_gates);
  out.total_physical_gates += inv_gates;
  return out;
}

}  // namespace dkit
