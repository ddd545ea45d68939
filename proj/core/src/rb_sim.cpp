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

#include "dkit/rb_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dkit/clifford.hpp"
#include "dkit/errors.hpp"
#include "dkit/parallel.hpp"
#include "dkit/rng.hpp"

namespace dkit {

using nlohmann::json;

double NoiseChannelSpec::total_eps() const {
  double t = 0.0;
  for (const auto& [mask, p] : eps) t += p;
  return t;
}

void NoiseChannelSpec::validate(int n_qubits) const {
  double total = 0.0;
  for (const auto& [mask, p] : eps) {
    if (mask == 0) throw ConfigError("noise.eps: empty subset not allowed");
    if (mask >> n_qubits) throw ConfigError("noise.eps: subset mask exceeds qubit count");
    if (p < 0.0) throw ConfigError("noise.eps: probabilities must be >= 0");
    total += p;
  }
  if (total > 1.0) throw ConfigError("noise.eps: probabilities must sum to <= 1");
  if (leak_up_per_gate < 0.0 || leak_up_per_gate > 1.0 ||
      leak_down_per_gate < 0.0 || leak_down_per_gate > 1.0)
    throw ConfigError("noise.leakage: rates must lie in [0, 1]");
}

int RBDataset::length_index(int m) const {
  const auto it = std::find(lengths.begin(), lengths.end(), m);
  if (it == lengths.end()) throw DomainError("RBDataset: unknown sequence length");
  return static_cast<int>(it - lengths.begin());
}

void RBDataset::validate() const {
  const std::size_t nl = lengths.size();
  if (outcomes.size() != nl) throw ConfigError("RBDataset: outcomes shape mismatch");
  for (const auto& per_seed : outcomes) {
    if (static_cast<int>(per_seed.size()) != n_seeds)
      throw ConfigError("RBDataset: seed count mismatch");
    for (const auto& shots : per_seed)
      if (static_cast<int>(shots.size()) != n_shots)
        throw ConfigError("RBDataset: incomplete outcome cell");
  }
  if (has_leakage && leaked.size() != nl)
    throw ConfigError("RBDataset: leak records missing");
}

namespace {

// Number of skipped trials before the next success of a Bernoulli(p) chain;
// advancing a position by (skip + 1) visits exactly the success sites.
inline long geometric_skip(Rng& rng, double log1m_p) {
  const double u = rng.uniform_pos();
  const double k = std::floor(std::log(u) / log1m_p);
  if (k > 1e18) return static_cast<long>(1e18);
  return static_cast<long>(k);
}

struct CellTask {
  int length_index;
  int seed_index;
};

}  // namespace

RBDataset simulate_rb(const RBConfig& config) {
  if (config.n_qubits < 1 || config.n_qubits > 16)
    throw ConfigError("simulate_rb: n_qubits must be in [1, 16]");
  if (config.lengths.empty() || config.seeds <= 0 || config.shots <= 0)
    throw ConfigError("simulate_rb: lengths, seeds and shots must be positive");
  for (int m : config.lengths)
    if (m < 1) throw ConfigError("simulate_rb: sequence lengths must be >= 1");
  config.noise.validate(config.n_qubits);

  std::vector<double> readout(config.n_qubits, 0.0);
  if (config.readout_error.size() == 1) {
    readout.assign(config.n_qubits, config.readout_error[0]);
  } else if (!config.readout_error.empty()) {
    if (config.readout_error.size() != static_cast<std::size_t>(config.n_qubits))
      throw ConfigError("simulate_rb: readout_error size mismatch");
    readout = config.readout_error;
  }
  for (double p : readout)
    if (p < 0.0 || p > 0.5) throw ConfigError("simulate_rb: readout_error must lie in [0, 0.5]");

  const CliffordGroup& group = CliffordGroup::instance();
  const int n = config.n_qubits;
  const int n_lengths = static_cast<int>(config.lengths.size());

  RBDataset ds;
  ds.n_qubits = n;
  ds.lengths = config.lengths;
  ds.n_seeds = config.seeds;
  ds.n_shots = config.shots;
  ds.readout_error = readout;
  ds.has_leakage = config.noise.leak_up_per_gate > 0.0;
  ds.gates_per_clifford = group.average_physical_gates();
  ds.outcomes.assign(n_lengths, {});
  ds.gate_counts.assign(n_lengths, {});
  if (ds.has_leakage) ds.leaked.assign(n_lengths, {});
  for (int li = 0; li < n_lengths; ++li) {
    ds.outcomes[li].resize(config.seeds);
    ds.gate_counts[li].resize(config.seeds);
    if (ds.has_leakage) ds.leaked[li].resize(config.seeds);
  }

  const double eps_tot = config.noise.total_eps();
  const double log1m_eps = eps_tot > 0 ? std::log1p(-eps_tot) : 0.0;
  const double lup = config.noise.leak_up_per_gate;
  const double ldown = config.noise.leak_down_per_gate;
  const double log1m_lup = (lup > 0 && lup < 1) ? std::log1p(-lup) : 0.0;
  const double log1m_ldown = (ldown > 0 && ldown < 1) ? std::log1p(-ldown) : 0.0;

  std::vector<CellTask> tasks;
  tasks.reserve(static_cast<std::size_t>(n_lengths) * config.seeds);
  for (int li = 0; li < n_lengths; ++li)
    for (int si = 0; si < config.seeds; ++si) tasks.push_back({li, si});

  parallel_for(tasks.size(), config.jobs, [&](std::size_t task_idx) {
    const auto [li, si] = tasks[task_idx];
    const int m = config.lengths[li];
    // Substream rule: one stream per (length, seed) cell.
    Rng rng = Rng::derive(config.master_seed,
                          {0x5EEDu, static_cast<std::uint64_t>(li),
                           static_cast<std::uint64_t>(si)});

    // Draw and compile one sequence per qubit: m Cliffords plus the inverse.
    std::vector<std::vector<int>> gates(n);
    std::vector<std::uint32_t> phys_gates(n, 0);
    for (int q = 0; q < n; ++q) {
      std::vector<int> seq(m);
      for (int t = 0; t < m; ++t) seq[t] = static_cast<int>(rng.below(kNumCliffords1Q));
      const auto compiled = group.compile_sequence(seq);
      seq.push_back(compiled.inverse_clifford);
      phys_gates[q] = static_cast<std::uint32_t>(compiled.total_physical_gates);
      gates[q] = std::move(seq);
    }

    // suffix[q][t]: conjugation of a Pauli label by gates t+1 .. m.
    const int n_slots = m + 1;
    std::vector<std::array<std::uint8_t, 4>> suffix(
        static_cast<std::size_t>(n) * n_slots);
    for (int q = 0; q < n; ++q) {
      auto* row = &suffix[static_cast<std::size_t>(q) * n_slots];
      row[m] = {0, 1, 2, 3};
      for (int t = m - 1; t >= 0; --t) {
        const int g = gates[q][t + 1];
        for (int p = 0; p < 4; ++p)
          row[t][p] = row[t + 1][group.conjugate_pauli(g, p)];
      }
    }

    // Map physical-pulse index -> slot index, for per-gate leakage sampling.
    std::vector<std::vector<std::int32_t>> slot_of_pulse;
    if (ds.has_leakage) {
      slot_of_pulse.resize(n);
      for (int q = 0; q < n; ++q) {
        slot_of_pulse[q].reserve(phys_gates[q]);
        for (int t = 0; t <= m; ++t) {
          const int c = group.decomposition(gates[q][t]).physical_gate_count();
          for (int k = 0; k < c; ++k) slot_of_pulse[q].push_back(t);
        }
      }
    }

    std::vector<std::uint16_t> cell_out(config.shots, 0);
    std::vector<std::uint16_t> cell_leak;
    if (ds.has_leakage) cell_leak.assign(config.shots, 0);

    for (int shot = 0; shot < config.shots; ++shot) {
      std::uint16_t out_mask = 0;

      if (eps_tot > 0.0) {
        long slot = -1;
        for (;;) {
          slot += 1 + (eps_tot >= 1.0 ? 0 : geometric_skip(rng, log1m_eps));
          if (slot >= n_slots) break;
          // Which subset fired.
          double u = rng.uniform() * eps_tot;
          std::uint32_t mask = config.noise.eps.back().first;
          for (const auto& [sm, p] : config.noise.eps) {
            if (u < p) {
              mask = sm;
              break;
            }
            u -= p;
          }
          for (int q = 0; q < n; ++q) {
            if (!(mask >> q & 1u)) continue;
            const int label = static_cast<int>(rng.next() & 3u);
            if (label == 0) continue;
            const auto& perm = suffix[static_cast<std::size_t>(q) * n_slots + slot];
            const int final_label = perm[label];
            if (final_label == 1 || final_label == 2)  // X or Y flips the bit
              out_mask ^= static_cast<std::uint16_t>(1u << q);
          }
        }
      }

      std::uint16_t leak_mask = 0;
      if (ds.has_leakage) {
        for (int q = 0; q < n; ++q) {
          const long total = static_cast<long>(slot_of_pulse[q].size());
          long pos = -1;
          bool leaked_now = false;
          bool returned = false;
          for (;;) {
            if (!leaked_now) {
              if (lup <= 0.0) break;
              pos += 1 + (lup >= 1.0 ? 0 : geometric_skip(rng, log1m_lup));
              if (pos >= total) break;
              leaked_now = true;
            } else {
              if (ldown <= 0.0) break;
              pos += 1 + (ldown >= 1.0 ? 0 : geometric_skip(rng, log1m_ldown));
              if (pos >= total) break;
              leaked_now = false;
              returned = true;
            }
          }
          const std::uint16_t bit = static_cast<std::uint16_t>(1u << q);
          if (leaked_now) {
            leak_mask |= bit;
            out_mask |= bit;  // a leaked qubit never reads |0>
          } else if (returned) {
            // Seepage returns the qubit depolarized.
            out_mask = static_cast<std::uint16_t>((out_mask & ~bit) |
                                                  (rng.bernoulli(0.5) ? bit : 0));
          }
        }
      }

      for (int q = 0; q < n; ++q)
        if (readout[q] > 0.0 && rng.bernoulli(readout[q]))
          out_mask ^= static_cast<std::uint16_t>(1u << q);

      cell_out[shot] = out_mask;
      if (ds.has_leakage) cell_leak[shot] = leak_mask;
    }

    ds.outcomes[li][si] = std::move(cell_out);
    if (ds.has_leakage) ds.leaked[li][si] = std::move(cell_leak);
    ds.gate_counts[li][si] = phys_gates;
  });

  return ds;
}

namespace {

std::string pack_hex(const std::vector<std::uint16_t>& shots, int n_qubits) {
  static const char* digits = "0123456789abcdef";
  const int width = (n_qubits + 3) / 4;
  std::string s;
  s.reserve(shots.size() * width);
  for (std::uint16_t v : shots)
    for (int c = 0; c < width; ++c) s.push_back(digits[(v >> (4 * c)) & 0xF]);
  return s;
}

std::vector<std::uint16_t> unpack_hex(const std::string& s, int n_qubits,
                                      int n_shots) {
  const int width = (n_qubits + 3) / 4;
  if (static_cast<int>(s.size()) != width * n_shots)
    throw ConfigError("RBDataset: packed outcome string has wrong length");
  std::vector<std::uint16_t> shots(n_shots, 0);
  for (int i = 0; i < n_shots; ++i) {
    std::uint16_t v = 0;
    for (int c = 0; c < width; ++c) {
      const char ch = s[static_cast<std::size_t>(i) * width + c];
      int d = 0;
      if (ch >= '0' && ch <= '9') d = ch - '0';
      else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
      else throw ConfigError("RBDataset: invalid hex digit in outcomes");
      v |= static_cast<std::uint16_t>(d << (4 * c));
    }
    shots[i] = v;
  }
  return shots;
}

}  // namespace

void save_rb_dataset(const RBDataset& ds, const std::string& path) {
  ds.validate();
  json j;
  j["n_qubits"] = ds.n_qubits;
  j["lengths"] = ds.lengths;
  j["seeds"] = ds.n_seeds;
  j["shots"] = ds.n_shots;
  j["readout_error"] = ds.readout_error;
  j["gates_per_clifford"] = ds.gates_per_clifford;
  j["has_leakage"] = ds.has_leakage;
  json out = json::array();
  for (const auto& per_seed : ds.outcomes) {
    json row = json::array();
    for (const auto& shots : per_seed) row.push_back(pack_hex(shots, ds.n_qubits));
    out.push_back(std::move(row));
  }
  j["outcomes"] = std::move(out);
  if (ds.has_leakage) {
    json lk = json::array();
    for (const auto& per_seed : ds.leaked) {
      json row = json::array();
      for (const auto& shots : per_seed) row.push_back(pack_hex(shots, ds.n_qubits));
      lk.push_back(std::move(row));
    }
    j["leaked"] = std::move(lk);
  }
  j["gate_counts"] = ds.gate_counts;
  if (!ds.generator_json.empty()) j["generator"] = json::parse(ds.generator_json);

  std::ofstream f(path);
  if (!f) throw ConfigError(path + ": cannot open for writing");
  f << j.dump() << "\n";
}

RBDataset load_rb_dataset(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path + ": cannot open dataset");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  RBDataset ds;
  try {
    ds.n_qubits = j.at("n_qubits").get<int>();
    ds.lengths = j.at("lengths").get<std::vector<int>>();
    ds.n_seeds = j.at("seeds").get<int>();
    ds.n_shots = j.at("shots").get<int>();
    ds.readout_error = j.at("readout_error").get<std::vector<double>>();
    ds.gates_per_clifford = j.at("gates_per_clifford").get<double>();
    ds.has_leakage = j.at("has_leakage").get<bool>();
    for (const auto& row : j.at("outcomes")) {
      std::vector<std::vector<std::uint16_t>> per_seed;
      for (const auto& s : row)
        per_seed.push_back(unpack_hex(s.get<std::string>(), ds.n_qubits, ds.n_shots));
      ds.outcomes.push_back(std::move(per_seed));
    }
    if (ds.has_leakage) {
      for (const auto& row : j.at("leaked")) {
        std::vector<std::vector<std::uint16_t>> per_seed;
        for (const auto& s : row)
          per_seed.push_back(unpack_hex(s.get<std::string>(), ds.n_qubits, ds.n_shots));
        ds.leaked.push_back(std::move(per_seed));
      }
    }
    ds.gate_counts = j.at("gate_counts").get<std::vector<std::vector<std::vector<std::uint32_t>>>>();
    if (j.contains("generator")) ds.generator_json = j.at("generator").dump();
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  ds.validate();
  return ds;
}

}  // namespace dkit
