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

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace dkit {

inline constexpr int kNumCliffords1Q = 24;

// Physical pulse alphabet. The identity slot exists for explicit idles; the
// compiler itself never emits it (frame-only Cliffords compile to zero
// pulses).
enum class PhysGate : std::uint8_t { I, X90, X180 };

// A single-qubit Clifford as physical X-family pulses interleaved with
// virtual Z frame rotations. z_quarter_turns[k] (in units of pi/2, 0..3) is
// applied before pulse k; the last entry is the trailing frame rotation.
struct CompiledClifford {
  std::vector<PhysGate> pulses;
  std::vector<int> z_quarter_turns;  // size == pulses.size() + 1

  int physical_gate_count() const { return static_cast<int>(pulses.size()); }
};

// The 24-element single-qubit Clifford group with a fixed, deterministic
// indexing (breadth-first closure over {X90, Z90} from the identity).
class CliffordGroup {
 public:
  using Unitary = std::array<std::complex<double>, 4>;  // row-major 2x2

  static const CliffordGroup& instance();

  // Index of the product "apply `first`, then `then`".
  int compose(int first, int then) const { return table_[then][first]; }
  int inverse(int g) const { return inverse_[g]; }

  // Conjugation action on Pauli labels {0:I, 1:X, 2:Y, 3:Z}, signs dropped:
  // the label P' with C P C^dag = +/- P'.
  int conjugate_pauli(int g, int pauli) const { return conj_[g][pauli]; }

  const Unitary& unitary(int g) const { return unitaries_[g]; }
  const CompiledClifford& decomposition(int g) const { return decomps_[g]; }

  // Exact group average of physical pulses per Clifford under the compiled
  // decomposition; computed by enumeration, not assumed.
  double average_physical_gates() const { return avg_physical_gates_; }

  struct CompiledSequence {
    int inverse_clifford = 0;  // unique element returning the frame to identity
    long total_physical_gates = 0;  // over the sequence plus the inverse
    std::vector<int> gates_per_element;
  };
  CompiledSequence compile_sequence(const std::vector<int>& sequence) const;

 private:
  CliffordGroup();

  std::array<Unitary, kNumCliffords1Q> unitaries_{};
  std::array<std::array<int, kNumCliffords1Q>, kNumCliffords1Q> table_{};
  std::array<int, kNumCliffords1Q> inverse_{};
  std::array<std::array<int, 4>, kNumCliffords1Q> conj_{};
  std::array<CompiledClifford, kNumCliffords1Q> decomps_{};
  double avg_physical_gates_ = 0.0;
};

}  // namespace dkit
