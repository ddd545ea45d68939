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

#include "dkit/transmon_sim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "dkit/constants.hpp"
#include "dkit/errors.hpp"
#include "dkit/freq_est.hpp"

namespace dkit {

namespace {

using cd = std::complex<double>;

// Real symmetric sparse Hamiltonian: diagonal plus off-diagonal triplets
// (stored once per unordered pair).
struct SparseH {
  std::vector<double> diag;
  struct Link {
    int a, b;
    double v;
  };
  std::vector<Link> links;

  void apply_minus_i_h(const std::vector<cd>& psi, std::vector<cd>& out) const {
    const std::size_t n = psi.size();
    for (std::size_t i = 0; i < n; ++i) out[i] = cd(0, -1) * (diag[i] * psi[i]);
    for (const auto& l : links) {
      out[l.a] += cd(0, -1) * (l.v * psi[l.b]);
      out[l.b] += cd(0, -1) * (l.v * psi[l.a]);
    }
  }
};

// Fixed-step RK4 on dpsi/dt = -i H psi, sampling an observable on a uniform
// grid of n_samples points.
TimeTrace integrate_population(const SparseH& h, std::vector<cd> psi,
                               double duration_s, int n_samples,
                               const std::vector<int>& excited_states) {
  double scale = 0.0;
  double dmin = h.diag.empty() ? 0.0 : h.diag[0];
  double dmax = dmin;
  for (double d : h.diag) {
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  scale = dmax - dmin;
  for (const auto& l : h.links) scale = std::max(scale, 2.0 * std::fabs(l.v));
  const double f_max = std::max(scale / kTwoPi, 1.0 / duration_s);
  const double dt_cap = 1.0 / (200.0 * f_max);
  const long steps_per_sample =
      std::max<long>(1, static_cast<long>(
                            std::ceil(duration_s / (n_samples - 1) / dt_cap)));
  const double dt = duration_s / (n_samples - 1) / steps_per_sample;

  const std::size_t dim = psi.size();
  std::vector<cd> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

  TimeTrace trace;
  trace.kind = TraceKind::Rabi;
  trace.delays_us.resize(n_samples);
  trace.signal.resize(n_samples);

  auto record = [&](int s) {
    double p = 0.0;
    for (int idx : excited_states) p += std::norm(psi[idx]);
    trace.delays_us[s] = s * (duration_s / (n_samples - 1)) * 1e6;
    trace.signal[s] = p;
  };
  record(0);

  for (int s = 1; s < n_samples; ++s) {
    for (long sub = 0; sub < steps_per_sample; ++sub) {
      h.apply_minus_i_h(psi, k1);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
      h.apply_minus_i_h(tmp, k2);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
      h.apply_minus_i_h(tmp, k3);
      for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + dt * k3[i];
      h.apply_minus_i_h(tmp, k4);
      for (std::size_t i = 0; i < dim; ++i)
        psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    // Keep the norm pinned; RK4 drift is tiny but accumulates on long runs.
    double norm2 = 0.0;
    for (const auto& c : psi) norm2 += std::norm(c);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : psi) c *= inv;
    record(s);
  }
  return trace;
}

DrivenTransmonResult extract_rate(TimeTrace trace, double duration_s) {
  DrivenTransmonResult res;
  res.peak_population =
      *std::max_element(trace.signal.begin(), trace.signal.end());
  SpectrumPeak peak;
  try {
    peak = gaussian_interp_frequency(trace);
  } catch (const DomainError& e) {
    throw DomainError(std::string("simulate_driven_transmon: oscillation extraction failed (") +
                      e.what() + ")");
  }
  // Need a resolvable oscillation, i.e. >= ~3 periods in the window.
  if (peak.f_est_MHz * duration_s * 1e6 < 2.5)
    throw DomainError("simulate_driven_transmon: duration covers fewer than ~3 oscillation periods");
  res.rabi_rate_rad_s = kTwoPi * peak.f_est_MHz * 1e6;
  res.population = std::move(trace);
  return res;
}

}  // namespace

DrivenTransmonResult simulate_driven_transmon(int levels, double alpha_rad_s,
                                              double drive_amp_rad_s,
                                              double detuning_rad_s,
                                              double duration_s) {
  if (levels < 2) throw DomainError("simulate_driven_transmon: need at least 2 levels");
  if (!(duration_s > 0)) throw DomainError("simulate_driven_transmon: duration must be positive");

  SparseH h;
  h.diag.resize(levels);
  for (int n = 0; n < levels; ++n)
    h.diag[n] = detuning_rad_s * n + 0.5 * alpha_rad_s * n * (n - 1);
  for (int n = 0; n + 1 < levels; ++n)
    h.links.push_back({n, n + 1, 0.5 * drive_amp_rad_s * std::sqrt(n + 1.0)});

  std::vector<cd> psi(levels, cd(0, 0));
  psi[0] = 1.0;
  std::vector<int> excited(levels - 1);
  std::iota(excited.begin(), excited.end(), 1);

  auto trace = integrate_population(h, std::move(psi), duration_s, 2048, excited);
  return extract_rate(std::move(trace), duration_s);
}

DrivenTransmonResult simulate_driven_transmon_pair(int levels, int max_states,
                                                   double alpha1_rad_s,
                                                   double alpha2_rad_s,
                                                   double delta_q_rad_s,
                                                   double J_rad_s,
                                                   double drive_amp_rad_s,
                                                   double duration_s) {
  if (levels < 2) throw DomainError("simulate_driven_transmon_pair: need at least 2 levels");
  if (max_states < 4) throw DomainError("simulate_driven_transmon_pair: need at least 4 states");

  // Bare rotating-frame energies; transmon 1 is resonant with the drive,
  // transmon 2 sits at -delta_q.
  struct State {
    int n1, n2;
    double e;
  };
  std::vector<State> all;
  for (int n1 = 0; n1 < levels; ++n1)
    for (int n2 = 0; n2 < levels; ++n2) {
      const double e = 0.5 * alpha1_rad_s * n1 * (n1 - 1) +
                       (-delta_q_rad_s) * n2 + 0.5 * alpha2_rad_s * n2 * (n2 - 1);
      all.push_back({n1, n2, e});
    }
  std::stable_sort(all.begin(), all.end(), [](const State& a, const State& b) {
    return std::fabs(a.e) < std::fabs(b.e);
  });
  if (static_cast<int>(all.size()) > max_states) all.resize(max_states);

  std::vector<int> index(levels * levels, -1);
  for (std::size_t i = 0; i < all.size(); ++i)
    index[all[i].n1 * levels + all[i].n2] = static_cast<int>(i);

  SparseH h;
  h.diag.resize(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) h.diag[i] = all[i].e;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& s = all[i];
    // Drive on transmon 2: (n1, n2) <-> (n1, n2+1).
    if (s.n2 + 1 < levels) {
      const int j = index[s.n1 * levels + (s.n2 + 1)];
      if (j >= 0)
        h.links.push_back({static_cast<int>(i), j,
                           0.5 * drive_amp_rad_s * std::sqrt(s.n2 + 1.0)});
    }
    // Exchange coupling: (n1, n2) <-> (n1+1, n2-1).
    if (s.n1 + 1 < levels && s.n2 >= 1) {
      const int j = index[(s.n1 + 1) * levels + (s.n2 - 1)];
      if (j >= 0)
        h.links.push_back({static_cast<int>(i), j,
                           J_rad_s * std::sqrt((s.n1 + 1.0) * s.n2)});
    }
  }

  std::vector<cd> psi(all.size(), cd(0, 0));
  const int ground = index[0];
  if (ground < 0) throw DomainError("simulate_driven_transmon_pair: ground state truncated away");
  psi[ground] = 1.0;

  std::vector<int> excited;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].n1 >= 1) excited.push_back(static_cast<int>(i));

  auto trace = integrate_population(h, std::move(psi), duration_s, 4096, excited);
  return extract_rate(std::move(trace), duration_s);
}

}  // namespace dkit
