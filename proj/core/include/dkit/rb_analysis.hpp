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
#include <functional>
#include <string>
#include <vector>

#include "dkit/fit.hpp"
#include "dkit/rb_sim.hpp"
#include "dkit/synth.hpp"

namespace dkit {

// Subset labels are bitmasks with qubit q at bit q. The string rendering
// follows the left-to-right convention: "1000" is qubit 0 alone.
std::string subset_to_bitstring(std::uint32_t mask, int n_qubits);
std::uint32_t subset_from_bitstring(const std::string& s);

// One decay curve vs sequence length: per-(length, seed) means plus the
// seed-scatter standard error used as fit weights.
struct DecayCurve {
  std::vector<int> lengths;
  std::vector<double> mean;
  std::vector<double> stderr_mean;             // scatter of seed means / sqrt(k)
  std::vector<std::vector<double>> per_seed;   // [length][seed]
};

// <Z_S> = mean over seeds/shots of prod_{q in S} (1 - 2 bit_q).
// Throws DomainError for an empty subset.
DecayCurve z_correlators(const RBDataset& ds, std::uint32_t subset_mask);

// Survival probability P(all probed bits = 0) for one qubit.
DecayCurve survival_probability(const RBDataset& ds, int qubit);

// Fraction of shots flagged leaked for one qubit.
DecayCurve leakage_population(const RBDataset& ds, int qubit);

// alpha_S / p_S / eps_S families over the 2^n subset lattice. values[mask];
// alpha has values[0] == 1 by convention.
struct SubspaceWeights {
  enum class Kind { Alpha, PauliP, DepolEps };
  Kind kind = Kind::Alpha;
  int n_qubits = 0;
  std::vector<double> values;
  std::vector<double> errors;  // optional, same indexing

  double sum() const;
};

// Transforms between the Z-correlator decay parameters alpha_S and the
// fixed-weight families. Both are per-qubit tensor kernels:
//   Pauli:        alpha_S = sum_T (-1/3)^{|S & T|} p_T
//   depolarizing: alpha_S = sum_{T : T & S = 0} eps_T
// The inverses are exact; round-trips are identity to machine precision.
SubspaceWeights alpha_to_pauli_weights(const SubspaceWeights& alpha);
SubspaceWeights alpha_to_depol_weights(const SubspaceWeights& alpha);
SubspaceWeights pauli_weights_to_alpha(const SubspaceWeights& p);
SubspaceWeights depol_weights_to_alpha(const SubspaceWeights& eps);

// Crosstalk metric
//   eta = sum_{|S|>1} |p_S| + sum_{|S|<=1} |p_S - p'_S|
// minimized over product-channel weights p' in [0,1] with sum_{|S|<=1} p' = 1.
// Negative p_S are clipped to zero first (clipping applies here only; the
// reported p_S keep their sign). The minimum has the closed form
//   sum_{|S|>1} max(p_S, 0) + |1 - sum_{|S|<=1} max(p_S, 0)|.
struct EtaTilde {
  double value = 0.0;
  double multi_qubit_mass = 0.0;   // sum over |S| > 1 after clipping
  double singles_adjustment = 0.0; // |1 - sum over |S| <= 1 after clipping|
  double clipped_negative_mass = 0.0;
};
EtaTilde crosstalk_metric(const SubspaceWeights& p);

// Error per Clifford (1 - alpha)/2 for one qubit, divided by the average
// physical gates per Clifford of the compiled gate set.
double epg_from_alpha(double alpha, double gates_per_clifford);

// Bootstrap over Clifford-sequence seeds: runs `statistic` on resampled seed
// index sets and returns the per-quantity standard deviations.
std::vector<double> bootstrap_std(
    int n_seeds, int n_resamples, std::uint64_t seed,
    const std::function<std::vector<double>(const std::vector<int>&)>& statistic,
    int jobs = 1);

// Full correlated-RB analysis of a multi-qubit dataset.
struct CorrRBResult {
  SubspaceWeights alpha;  // fitted, with bootstrap errors when requested
  SubspaceWeights pauli_p;
  SubspaceWeights depol_eps;
  EtaTilde eta;
  double eta_err = 0.0;
  double pauli_sum = 0.0;       // should be 1 (deviation reported, not fixed)
  std::vector<FitResult> fits;  // per subset, index = mask
  double gates_per_clifford = 0.0;
  std::vector<double> epg;      // per qubit, from singleton alphas
};
CorrRBResult analyze_correlated_rb(const RBDataset& ds, int n_bootstrap = 100,
                                   std::uint64_t bootstrap_seed = 0, int jobs = 1);

// Correlated-RB analysis starting from externally supplied alpha values
// (e.g. a published table); no bootstrap.
CorrRBResult analyze_alpha_table(const SubspaceWeights& alpha);

// Leakage RB analysis of a single-qubit dataset with leak flags.
struct LeakageRBResult {
  LeakageRBFit three_param;
  LeakageRBFit four_param;
  DecayCurve leak_curve;
  DecayCurve survival_curve;
};
LeakageRBResult analyze_leakage_rb(const RBDataset& ds, int qubit = 0);

// Assignment fidelity F = 1 - p(e|g) - p(g|e) from labeled single-shot
// records. Throws DomainError unless both prepared classes are present.
double assignment_fidelity(const std::vector<IQShot>& shots);

}  // namespace dkit
