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

#include "dkit/rb_analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "dkit/clifford.hpp"
#include "dkit/errors.hpp"
#include "dkit/parallel.hpp"
#include "dkit/rng.hpp"

namespace dkit {

std::string subset_to_bitstring(std::uint32_t mask, int n_qubits) {
  std::string s(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q)
    if (mask >> q & 1u) s[q] = '1';
  return s;
}

std::uint32_t subset_from_bitstring(const std::string& s) {
  std::uint32_t mask = 0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    if (s[q] == '1')
      mask |= 1u << q;
    else if (s[q] != '0')
      throw ConfigError("subset bitstring must contain only 0/1");
  }
  return mask;
}

namespace {

// Per-seed means of f(outcome) for every length, plus the scatter-based
// standard error of the per-length mean.
DecayCurve reduce_dataset(const RBDataset& ds,
                          const std::function<double(std::uint16_t, std::uint16_t)>& f,
                          bool use_leak) {
  DecayCurve curve;
  curve.lengths = ds.lengths;
  const int n_lengths = static_cast<int>(ds.lengths.size());
  curve.per_seed.assign(n_lengths, std::vector<double>(ds.n_seeds, 0.0));
  curve.mean.resize(n_lengths);
  curve.stderr_mean.resize(n_lengths);
  for (int li = 0; li < n_lengths; ++li) {
    double sum = 0.0;
    for (int si = 0; si < ds.n_seeds; ++si) {
      const auto& shots = ds.outcomes[li][si];
      const auto* leak = use_leak ? &ds.leaked[li][si] : nullptr;
      double acc = 0.0;
      for (std::size_t s = 0; s < shots.size(); ++s)
        acc += f(shots[s], leak ? (*leak)[s] : 0);
      const double m = acc / static_cast<double>(shots.size());
      curve.per_seed[li][si] = m;
      sum += m;
    }
    const double mean = sum / ds.n_seeds;
    curve.mean[li] = mean;
    double var = 0.0;
    for (double v : curve.per_seed[li]) var += (v - mean) * (v - mean);
    var = ds.n_seeds > 1 ? var / (ds.n_seeds - 1) : 0.0;
    curve.stderr_mean[li] = std::sqrt(var / ds.n_seeds);
  }
  return curve;
}

std::vector<double> weighted_seed_mean(const DecayCurve& curve,
                                       const std::vector<int>& seed_idx) {
  std::vector<double> mean(curve.lengths.size(), 0.0);
  for (std::size_t li = 0; li < curve.lengths.size(); ++li) {
    double acc = 0.0;
    for (int si : seed_idx) acc += curve.per_seed[li][si];
    mean[li] = acc / static_cast<double>(seed_idx.size());
  }
  return mean;
}

void apply_kernel(std::vector<double>& v, int n_qubits, const double k[2][2]) {
  const std::size_t size = v.size();
  for (int q = 0; q < n_qubits; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t m = 0; m < size; ++m) {
      if (m & bit) continue;
      const double lo = v[m];
      const double hi = v[m | bit];
      v[m] = k[0][0] * lo + k[0][1] * hi;
      v[m | bit] = k[1][0] * lo + k[1][1] * hi;
    }
  }
}

SubspaceWeights transform(const SubspaceWeights& in, SubspaceWeights::Kind out_kind,
                          const double k[2][2]) {
  SubspaceWeights out;
  out.kind = out_kind;
  out.n_qubits = in.n_qubits;
  out.values = in.values;
  apply_kernel(out.values, in.n_qubits, k);
  return out;
}

void check_alpha(const SubspaceWeights& w) {
  if (w.kind != SubspaceWeights::Kind::Alpha)
    throw DomainError("transform: input must be an alpha family");
  const std::size_t expect = std::size_t{1} << w.n_qubits;
  if (w.values.size() != expect)
    throw DomainError("transform: incomplete alpha set (need all 2^n entries, alpha[0] = 1)");
  if (std::fabs(w.values[0] - 1.0) > 1e-12)
    throw DomainError("transform: alpha of the empty subset must be 1");
}

}  // namespace

double SubspaceWeights::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

DecayCurve z_correlators(const RBDataset& ds, std::uint32_t subset_mask) {
  if (subset_mask == 0) throw DomainError("z_correlators: empty subset");
  if (subset_mask >> ds.n_qubits)
    throw DomainError("z_correlators: subset outside the register");
  return reduce_dataset(
      ds,
      [subset_mask](std::uint16_t bits, std::uint16_t) {
        return std::popcount(static_cast<unsigned>(bits & subset_mask)) % 2 == 0
                   ? 1.0
                   : -1.0;
      },
      false);
}

DecayCurve survival_probability(const RBDataset& ds, int qubit) {
  if (qubit < 0 || qubit >= ds.n_qubits)
    throw DomainError("survival_probability: qubit out of range");
  const std::uint16_t bit = static_cast<std::uint16_t>(1u << qubit);
  return reduce_dataset(
      ds, [bit](std::uint16_t bits, std::uint16_t) { return (bits & bit) ? 0.0 : 1.0; },
      false);
}

DecayCurve leakage_population(const RBDataset& ds, int qubit) {
  if (!ds.has_leakage) throw DomainError("leakage_population: dataset has no leak records");
  if (qubit < 0 || qubit >= ds.n_qubits)
    throw DomainError("leakage_population: qubit out of range");
  const std::uint16_t bit = static_cast<std::uint16_t>(1u << qubit);
  return reduce_dataset(
      ds, [bit](std::uint16_t, std::uint16_t leak) { return (leak & bit) ? 1.0 : 0.0; },
      true);
}

SubspaceWeights alpha_to_pauli_weights(const SubspaceWeights& alpha) {
  check_alpha(alpha);
  // Inverse of the per-qubit kernel [[1, 1], [1, -1/3]].
  static const double kInv[2][2] = {{0.25, 0.75}, {0.75, -0.75}};
  return transform(alpha, SubspaceWeights::Kind::PauliP, kInv);
}

SubspaceWeights pauli_weights_to_alpha(const SubspaceWeights& p) {
  if (p.kind != SubspaceWeights::Kind::PauliP)
    throw DomainError("transform: input must be a Pauli fixed-weight family");
  static const double kFwd[2][2] = {{1.0, 1.0}, {1.0, -1.0 / 3.0}};
  auto out = transform(p, SubspaceWeights::Kind::Alpha, kFwd);
  return out;
}

SubspaceWeights alpha_to_depol_weights(const SubspaceWeights& alpha) {
  check_alpha(alpha);
  // Inverse of the per-qubit kernel [[1, 1], [1, 0]].
  static const double kInv[2][2] = {{0.0, 1.0}, {1.0, -1.0}};
  return transform(alpha, SubspaceWeights::Kind::DepolEps, kInv);
}

SubspaceWeights depol_weights_to_alpha(const SubspaceWeights& eps) {
  if (eps.kind != SubspaceWeights::Kind::DepolEps)
    throw DomainError("transform: input must be a depolarizing fixed-weight family");
  static const double kFwd[2][2] = {{1.0, 1.0}, {1.0, 0.0}};
  return transform(eps, SubspaceWeights::Kind::Alpha, kFwd);
}

EtaTilde crosstalk_metric(const SubspaceWeights& p) {
  if (p.kind != SubspaceWeights::Kind::PauliP)
    throw DomainError("crosstalk_metric: input must be Pauli fixed-weight parameters");
  const std::size_t size = std::size_t{1} << p.n_qubits;
  if (p.values.size() != size)
    throw DomainError("crosstalk_metric: need the full 2^n entry set");

  EtaTilde eta;
  double singles_sum = 0.0;
  double singles_capacity = 0.0;
  for (std::size_t mask = 0; mask < size; ++mask) {
    const double v = p.values[mask];
    const double q = std::max(v, 0.0);
    if (v < 0.0) eta.clipped_negative_mass += -v;
    const int w = std::popcount(static_cast<unsigned>(mask));
    if (w > 1) {
      eta.multi_qubit_mass += q;
    } else {
      singles_sum += q;
      singles_capacity += 1.0;
    }
  }
  // Feasibility of the constrained product channel is guaranteed: the n+1
  // weight-<=1 entries can always sum to 1 within [0, 1] bounds.
  if (singles_capacity < 1.0)
    throw DomainError("crosstalk_metric: constraint infeasible");
  eta.singles_adjustment = std::fabs(1.0 - singles_sum);
  eta.value = eta.multi_qubit_mass + eta.singles_adjustment;
  return eta;
}

double epg_from_alpha(double alpha, double gates_per_clifford) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw DomainError("epg_from_alpha: alpha must lie in (0, 1]");
  if (!(gates_per_clifford > 0.0))
    throw DomainError("epg_from_alpha: gates_per_clifford must be positive");
  return (1.0 - alpha) / 2.0 / gates_per_clifford;
}

std::vector<double> bootstrap_std(
    int n_seeds, int n_resamples, std::uint64_t seed,
    const std::function<std::vector<double>(const std::vector<int>&)>& statistic,
    int jobs) {
  if (n_seeds < 10) throw DomainError("bootstrap_std: need at least 10 seeds");
  if (n_resamples < 2) throw DomainError("bootstrap_std: need at least 2 resamples");

  std::vector<std::vector<double>> samples(n_resamples);
  parallel_for(static_cast<std::size_t>(n_resamples), jobs, [&](std::size_t r) {
    Rng rng = Rng::derive(seed, {0xB007u, static_cast<std::uint64_t>(r)});
    std::vector<int> idx(n_seeds);
    for (int& v : idx) v = static_cast<int>(rng.below(static_cast<std::uint32_t>(n_seeds)));
    samples[r] = statistic(idx);
  });

  const std::size_t q = samples[0].size();
  std::vector<double> sd(q, 0.0);
  for (std::size_t k = 0; k < q; ++k) {
    double mean = 0.0;
    for (const auto& s : samples) mean += s[k];
    mean /= n_resamples;
    double var = 0.0;
    for (const auto& s : samples) var += (s[k] - mean) * (s[k] - mean);
    sd[k] = std::sqrt(var / (n_resamples - 1));
  }
  return sd;
}

namespace {

// Fit every nonempty subset's correlator decay; returns alpha indexed by mask.
std::vector<double> fit_all_alphas(const std::vector<DecayCurve>& curves,
                                   const std::vector<int>* seed_idx,
                                   std::vector<FitResult>* fits_out) {
  const std::size_t size = curves.size();  // 2^n, index 0 unused
  std::vector<double> alpha(size, 1.0);
  for (std::size_t mask = 1; mask < size; ++mask) {
    const DecayCurve& c = curves[mask];
    FitResult fit;
    if (seed_idx) {
      fit = fit_rb_curve(c.lengths, weighted_seed_mean(c, *seed_idx), c.stderr_mean);
    } else {
      fit = fit_rb_curve(c.lengths, c.mean, c.stderr_mean);
    }
    alpha[mask] = fit.value("alpha");
    if (fits_out) (*fits_out)[mask] = std::move(fit);
  }
  return alpha;
}

}  // namespace

CorrRBResult analyze_correlated_rb(const RBDataset& ds, int n_bootstrap,
                                   std::uint64_t bootstrap_seed, int jobs) {
  if (ds.n_qubits < 1 || ds.n_qubits > 10)
    throw DomainError("analyze_correlated_rb: unsupported qubit count");
  const std::size_t size = std::size_t{1} << ds.n_qubits;

  std::vector<DecayCurve> curves(size);
  std::vector<std::uint32_t> masks;
  for (std::size_t mask = 1; mask < size; ++mask) masks.push_back(static_cast<std::uint32_t>(mask));
  parallel_for(masks.size(), jobs, [&](std::size_t i) {
    curves[masks[i]] = z_correlators(ds, masks[i]);
  });

  CorrRBResult out;
  out.fits.resize(size);
  out.alpha.kind = SubspaceWeights::Kind::Alpha;
  out.alpha.n_qubits = ds.n_qubits;
  out.alpha.values = fit_all_alphas(curves, nullptr, &out.fits);
  out.pauli_p = alpha_to_pauli_weights(out.alpha);
  out.depol_eps = alpha_to_depol_weights(out.alpha);
  out.eta = crosstalk_metric(out.pauli_p);
  out.pauli_sum = out.pauli_p.sum();
  out.gates_per_clifford = ds.gates_per_clifford;
  for (int q = 0; q < ds.n_qubits; ++q)
    out.epg.push_back(epg_from_alpha(
        std::clamp(out.alpha.values[std::size_t{1} << q], 1e-12, 1.0),
        ds.gates_per_clifford));

  if (n_bootstrap > 1) {
    // Resampling unit is the Clifford-sequence seed, per protocol.
    auto statistic = [&](const std::vector<int>& idx) {
      const std::vector<double> alpha = fit_all_alphas(curves, &idx, nullptr);
      SubspaceWeights a{SubspaceWeights::Kind::Alpha, ds.n_qubits, alpha, {}};
      const auto p = alpha_to_pauli_weights(a);
      const auto e = alpha_to_depol_weights(a);
      std::vector<double> stat;
      stat.insert(stat.end(), alpha.begin(), alpha.end());
      stat.insert(stat.end(), p.values.begin(), p.values.end());
      stat.insert(stat.end(), e.values.begin(), e.values.end());
      stat.push_back(crosstalk_metric(p).value);
      return stat;
    };
    const auto sd = bootstrap_std(ds.n_seeds, n_bootstrap, bootstrap_seed, statistic, jobs);
    out.alpha.errors.assign(sd.begin(), sd.begin() + size);
    out.pauli_p.errors.assign(sd.begin() + size, sd.begin() + 2 * size);
    out.depol_eps.errors.assign(sd.begin() + 2 * size, sd.begin() + 3 * size);
    out.eta_err = sd[3 * size];
  }
  return out;
}

CorrRBResult analyze_alpha_table(const SubspaceWeights& alpha) {
  check_alpha(alpha);
  CorrRBResult out;
  out.alpha = alpha;
  out.pauli_p = alpha_to_pauli_weights(alpha);
  out.depol_eps = alpha_to_depol_weights(alpha);
  out.eta = crosstalk_metric(out.pauli_p);
  out.pauli_sum = out.pauli_p.sum();
  out.gates_per_clifford = CliffordGroup::instance().average_physical_gates();
  for (int q = 0; q < alpha.n_qubits; ++q)
    out.epg.push_back(epg_from_alpha(
        std::clamp(alpha.values[std::size_t{1} << q], 1e-12, 1.0),
        out.gates_per_clifford));
  return out;
}

LeakageRBResult analyze_leakage_rb(const RBDataset& ds, int qubit) {
  LeakageRBResult out;
  out.leak_curve = leakage_population(ds, qubit);
  out.survival_curve = survival_probability(ds, qubit);
  out.three_param = fit_leakage_rb(out.leak_curve.lengths, out.leak_curve.mean,
                                   out.leak_curve.stderr_mean, out.survival_curve.mean,
                                   out.survival_curve.stderr_mean,
                                   LeakageFitMode::ThreeParam, ds.gates_per_clifford);
  out.four_param = fit_leakage_rb(out.leak_curve.lengths, out.leak_curve.mean,
                                  out.leak_curve.stderr_mean, out.survival_curve.mean,
                                  out.survival_curve.stderr_mean,
                                  LeakageFitMode::FourParam, ds.gates_per_clifford);
  return out;
}

double assignment_fidelity(const std::vector<IQShot>& shots) {
  long n_g = 0, n_e = 0, e_given_g = 0, g_given_e = 0;
  for (const auto& s : shots) {
    if (s.prepared_excited) {
      ++n_e;
      if (!s.assigned_excited) ++g_given_e;
    } else {
      ++n_g;
      if (s.assigned_excited) ++e_given_g;
    }
  }
  if (n_g == 0 || n_e == 0)
    throw DomainError("assignment_fidelity: both prepared classes are required");
  return 1.0 - static_cast<double>(e_given_g) / n_g -
         static_cast<double>(g_given_e) / n_e;
}

}  // namespace dkit
