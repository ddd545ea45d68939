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
#include <string>
#include <utility>
#include <vector>

namespace dkit {

// Per-subset depolarizing channel. After each Clifford layer at most one
// event fires; an event on subset S replaces the state of every qubit in S
// with the maximally mixed state (implemented as an independent uniform
// I/X/Y/Z Pauli per qubit of S). Optional per-physical-gate leakage moves a
// qubit out of the computational subspace (rate up) and back (rate down),
// returning it depolarized.
struct NoiseChannelSpec {
  // subset bitmask (qubit q = bit q, nonempty) -> probability per Clifford
  std::vector<std::pair<std::uint32_t, double>> eps;
  double leak_up_per_gate = 0.0;
  double leak_down_per_gate = 0.0;

  double total_eps() const;
  void validate(int n_qubits) const;
};

struct RBConfig {
  int n_qubits = 1;
  std::vector<int> lengths;  // Clifford counts m (the inverse is extra)
  int seeds = 0;             // random sequences per length
  int shots = 0;             // repetitions per sequence
  NoiseChannelSpec noise;
  std::vector<double> readout_error;  // per qubit; empty = none, size 1 = broadcast
  std::uint64_t master_seed = 0;
  int jobs = 1;
};

// Simultaneous individual single-qubit RB outcome records. outcomes[li][si]
// holds one bitmask per shot (qubit q = bit q, set = measured |1>).
struct RBDataset {
  int n_qubits = 1;
  std::vector<int> lengths;
  int n_seeds = 0;
  int n_shots = 0;
  std::vector<double> readout_error;
  bool has_leakage = false;
  double gates_per_clifford = 0.0;  // exact group average of the compiler

  std::vector<std::vector<std::vector<std::uint16_t>>> outcomes;
  std::vector<std::vector<std::vector<std::uint16_t>>> leaked;  // empty unless has_leakage
  // Physical pulses compiled per (length, seed, qubit), inverse included.
  std::vector<std::vector<std::vector<std::uint32_t>>> gate_counts;

  std::string generator_json;  // config echo for provenance (may be empty)

  int length_index(int m) const;
  void validate() const;
};

// Pauli-frame Monte Carlo. Deterministic for a fixed master seed: every
// (length, seed) cell derives its own substream, so results are independent
// of the worker count.
RBDataset simulate_rb(const RBConfig& config);

// JSON (outcome bitstrings packed base-16, shot-major).
void save_rb_dataset(const RBDataset& ds, const std::string& path);
RBDataset load_rb_dataset(const std::string& path);

}  // namespace dkit
