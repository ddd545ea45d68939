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

#include <bit>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "dkit/errors.hpp"
#include "dkit/rb_analysis.hpp"
#include "dkit/rb_sim.hpp"
#include "dkit/rng.hpp"
#include "dkit/synth.hpp"

using namespace dkit;

namespace {

RBDataset fixed_outcomes(int n_qubits, int lengths, int seeds, int shots,
                         std::uint16_t value) {
  RBDataset ds;
  ds.n_qubits = n_qubits;
  for (int i = 0; i < lengths; ++i) ds.lengths.push_back(1 + 3 * i);
  ds.n_seeds = seeds;
  ds.n_shots = shots;
  ds.gates_per_clifford = 5.0 / 6.0;
  ds.outcomes.assign(lengths, std::vector<std::vector<std::uint16_t>>(
                                  seeds, std::vector<std::uint16_t>(shots, value)));
  ds.gate_counts.assign(lengths, std::vector<std::vector<std::uint32_t>>(
                                     seeds, std::vector<std::uint32_t>(n_qubits, 1)));
  return ds;
}

SubspaceWeights alpha_family(int n, std::vector<double> values) {
  SubspaceWeights w;
  w.kind = SubspaceWeights::Kind::Alpha;
  w.n_qubits = n;
  w.values = std::move(values);
  return w;
}

}  // namespace

TEST_CASE("subset bitstring convention: leftmost character is qubit 0") {
  CHECK(subset_to_bitstring(1u, 4) == "1000");
  CHECK(subset_to_bitstring(8u, 4) == "0001");
  CHECK(subset_to_bitstring(3u, 4) == "1100");
  CHECK(subset_from_bitstring("1000") == 1u);
  CHECK(subset_from_bitstring("0011") == 12u);
}

TEST_CASE("z_correlators on handcrafted outcomes") {
  const auto zeros = fixed_outcomes(4, 5, 6, 10, 0x0);
  const auto c = z_correlators(zeros, 0xFu);
  for (double v : c.mean) CHECK(v == 1.0);

  // Outcome 0b0011 flips qubits 0 and 1: <ZZII> = +1, <ZIII> = -1.
  const auto flipped = fixed_outcomes(4, 5, 6, 10, 0x3);
  CHECK(z_correlators(flipped, 0x3u).mean[0] == 1.0);
  CHECK(z_correlators(flipped, 0x1u).mean[0] == -1.0);

  CHECK_THROWS_AS(z_correlators(zeros, 0u), DomainError);

  // Uniformly random outcomes average to ~0.
  RBDataset random_ds = fixed_outcomes(4, 3, 8, 4000, 0);
  Rng rng(5);
  for (auto& per_seed : random_ds.outcomes)
    for (auto& shots : per_seed)
      for (auto& v : shots) v = static_cast<std::uint16_t>(rng.next() & 0xF);
  const auto rc = z_correlators(random_ds, 0x5u);
  for (double v : rc.mean) CHECK(std::fabs(v) < 0.05);
}

TEST_CASE("alpha -> weights transforms on trivial input") {
  const int n = 4;
  const std::size_t size = 1u << n;
  auto alpha = alpha_family(n, std::vector<double>(size, 1.0));
  const auto p = alpha_to_pauli_weights(alpha);
  const auto eps = alpha_to_depol_weights(alpha);
  CHECK(p.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eps.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t mask = 1; mask < size; ++mask) {
    CHECK(std::fabs(p.values[mask]) < 1e-14);
    CHECK(std::fabs(eps.values[mask]) < 1e-14);
  }
}

TEST_CASE("transform kernels match brute-force channel enumeration (1 and 2 qubits)") {
  Rng rng(17);

  SUBCASE("pauli fixed-weight channel, 1 qubit") {
    for (int trial = 0; trial < 20; ++trial) {
      const double w = 0.2 * rng.uniform();
      // Class-uniform Pauli channel: I w.p. 1-w, each of X/Y/Z w.p. w/3.
      // <Z> multiplier: X,Y flip the sign.
      const double alpha1 = (1.0 - w) + w / 3.0 * (-1.0 - 1.0 + 1.0);
      auto alpha = alpha_family(1, {1.0, alpha1});
      const auto p = alpha_to_pauli_weights(alpha);
      CHECK(p.values[0] == doctest::Approx(1.0 - w).epsilon(1e-12));
      CHECK(p.values[1] == doctest::Approx(w).epsilon(1e-12));
    }
  }

  SUBCASE("pauli fixed-weight channel, 2 qubits") {
    for (int trial = 0; trial < 20; ++trial) {
      // Random fixed-weight distribution p_T over subsets {∅,1,2,12}.
      std::array<double, 4> pt{rng.uniform(), 0.1 * rng.uniform(),
                               0.1 * rng.uniform(), 0.1 * rng.uniform()};
      const double norm = pt[0] + pt[1] + pt[2] + pt[3];
      for (auto& v : pt) v /= norm;
      // Enumerate the class-uniform channel over all 16 Paulis and compute
      // every correlator decay directly.
      std::array<double, 4> alpha{1.0, 0.0, 0.0, 0.0};
      for (int c0 = 0; c0 < 4; ++c0)
        for (int c1 = 0; c1 < 4; ++c1) {
          const int support = (c0 != 0 ? 1 : 0) | (c1 != 0 ? 2 : 0);
          const double prob =
              pt[support] / (support == 3 ? 9.0 : (support == 0 ? 1.0 : 3.0));
          auto zmult = [](int c) { return (c == 1 || c == 2) ? -1.0 : 1.0; };
          for (int mask = 1; mask < 4; ++mask) {
            double m = 1.0;
            if (mask & 1) m *= zmult(c0);
            if (mask & 2) m *= zmult(c1);
            alpha[mask] += prob * m;
          }
        }
      auto a = alpha_family(2, {alpha[0], alpha[1], alpha[2], alpha[3]});
      const auto p = alpha_to_pauli_weights(a);
      for (int mask = 0; mask < 4; ++mask)
        CHECK(p.values[mask] == doctest::Approx(pt[mask]).epsilon(1e-10));
    }
  }

  SUBCASE("depolarizing channel, 2 qubits") {
    for (int trial = 0; trial < 20; ++trial) {
      std::array<double, 4> et{0.0, 0.1 * rng.uniform(), 0.1 * rng.uniform(),
                               0.1 * rng.uniform()};
      et[0] = 1.0 - et[1] - et[2] - et[3];
      // Full depolarization of subset T: uniform Pauli on T including I.
      std::array<double, 4> alpha{1.0, 0.0, 0.0, 0.0};
      for (int support = 0; support < 4; ++support) {
        for (int mask = 1; mask < 4; ++mask) {
          // A probed qubit inside the depolarized subset averages to zero.
          alpha[mask] += (mask & support) ? 0.0 : et[support];
        }
      }
      auto a = alpha_family(2, {alpha[0], alpha[1], alpha[2], alpha[3]});
      const auto eps = alpha_to_depol_weights(a);
      for (int mask = 0; mask < 4; ++mask)
        CHECK(eps.values[mask] == doctest::Approx(et[mask]).epsilon(1e-10));
    }
  }
}

TEST_CASE("transforms round-trip to machine precision at n = 4") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    SubspaceWeights p;
    p.kind = SubspaceWeights::Kind::PauliP;
    p.n_qubits = 4;
    p.values.resize(16);
    double total = 0.0;
    for (auto& v : p.values) {
      v = rng.uniform() * 0.01;
      total += v;
    }
    p.values[0] += 1.0 - total;
    const auto alpha = pauli_weights_to_alpha(p);
    const auto back = alpha_to_pauli_weights(alpha);
    for (int i = 0; i < 16; ++i)
      CHECK(std::fabs(back.values[i] - p.values[i]) < 1e-12);

    SubspaceWeights eps;
    eps.kind = SubspaceWeights::Kind::DepolEps;
    eps.n_qubits = 4;
    eps.values.resize(16);
    total = 0.0;
    for (auto& v : eps.values) {
      v = rng.uniform() * 0.01;
      total += v;
    }
    eps.values[0] += 1.0 - total;
    const auto alpha2 = depol_weights_to_alpha(eps);
    const auto back2 = alpha_to_depol_weights(alpha2);
    for (int i = 0; i < 16; ++i)
      CHECK(std::fabs(back2.values[i] - eps.values[i]) < 1e-12);
  }
}

TEST_CASE("crosstalk metric") {
  SUBCASE("consistent product channel gives exactly zero") {
    SubspaceWeights p;
    p.kind = SubspaceWeights::Kind::PauliP;
    p.n_qubits = 2;
    p.values = {0.9, 0.06, 0.04, 0.0};
    const auto eta = crosstalk_metric(p);
    CHECK(eta.value == 0.0);
  }

  SUBCASE("closed form matches brute-force minimization on 2 qubits") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
      SubspaceWeights p;
      p.kind = SubspaceWeights::Kind::PauliP;
      p.n_qubits = 2;
      p.values = {0.9 + 0.2 * rng.uniform(), 0.05 * (rng.uniform() - 0.2),
                  0.05 * (rng.uniform() - 0.2), 0.02 * (rng.uniform() - 0.3)};
      const auto eta = crosstalk_metric(p);
      // Brute force over the constrained product weights (p0, p1, p2 >= 0,
      // sum = 1) on a fine grid.
      std::array<double, 4> q;
      for (int i = 0; i < 4; ++i) q[i] = std::max(p.values[i], 0.0);
      double best = 1e9;
      const int steps = 400;
      for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps - i; ++j) {
          const double p0 = static_cast<double>(i) / steps;
          const double p1 = static_cast<double>(j) / steps;
          const double p2 = 1.0 - p0 - p1;
          const double v = std::fabs(q[0] - p0) + std::fabs(q[1] - p1) +
                           std::fabs(q[2] - p2) + q[3];
          best = std::min(best, v);
        }
      CHECK(eta.value <= best + 1e-12);
      CHECK(eta.value >= best - 2.0 / steps);
    }
  }

  SUBCASE("invariant under consistent qubit relabeling") {
    SubspaceWeights p;
    p.kind = SubspaceWeights::Kind::PauliP;
    p.n_qubits = 4;
    p.values.assign(16, 0.0);
    Rng rng(41);
    double total = 0.0;
    for (int i = 1; i < 16; ++i) {
      p.values[i] = 0.002 * (rng.uniform() - 0.2);
      total += p.values[i];
    }
    p.values[0] = 1.0 - total;
    // Swap qubits 0 and 3 in every mask.
    SubspaceWeights perm = p;
    for (int mask = 0; mask < 16; ++mask) {
      int swapped = mask & 0b0110;
      if (mask & 1) swapped |= 8;
      if (mask & 8) swapped |= 1;
      perm.values[swapped] = p.values[mask];
    }
    CHECK(crosstalk_metric(p).value ==
          doctest::Approx(crosstalk_metric(perm).value).epsilon(1e-12));
  }
}

TEST_CASE("published alpha table maps to the expected weights and metric") {
  // Fifteen measured Z-correlator decay parameters for a four-qubit device,
  // keyed by the bitstring convention.
  const std::vector<std::pair<std::string, double>> table = {
      {"1000", 0.99962}, {"0100", 0.99954}, {"0010", 0.99969}, {"0001", 0.99950},
      {"1100", 0.99920}, {"1010", 0.99931}, {"1001", 0.99914}, {"0110", 0.99927},
      {"0101", 0.99910}, {"0011", 0.99921}, {"1110", 0.99893}, {"1101", 0.99875},
      {"1011", 0.99884}, {"0111", 0.99882}, {"1111", 0.99846}};
  SubspaceWeights alpha;
  alpha.kind = SubspaceWeights::Kind::Alpha;
  alpha.n_qubits = 4;
  alpha.values.assign(16, 1.0);
  for (const auto& [key, value] : table)
    alpha.values[subset_from_bitstring(key)] = value;

  const auto res = analyze_alpha_table(alpha);
  CHECK(res.pauli_p.values[0] == doctest::Approx(0.99883).epsilon(2e-4));
  CHECK(res.eta.value > 1.1e-4 / 1.5);
  CHECK(res.eta.value < 1.1e-4 * 1.5);
  CHECK(res.pauli_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bootstrap_std") {
  SUBCASE("zero-variance statistic has zero spread") {
    auto stat = [](const std::vector<int>&) { return std::vector<double>{3.5}; };
    const auto sd = bootstrap_std(20, 50, 1, stat);
    CHECK(sd[0] == 0.0);
  }

  SUBCASE("matches the analytic standard error of a mean within 1.5x") {
    Rng rng(71);
    std::vector<double> data(80);
    for (auto& v : data) v = rng.normal();
    double mean = 0.0, var = 0.0;
    for (double v : data) mean += v;
    mean /= data.size();
    for (double v : data) var += (v - mean) * (v - mean);
    var /= (data.size() - 1);
    const double analytic = std::sqrt(var / data.size());
    auto stat = [&](const std::vector<int>& idx) {
      double m = 0.0;
      for (int i : idx) m += data[i];
      return std::vector<double>{m / idx.size()};
    };
    const auto sd = bootstrap_std(static_cast<int>(data.size()), 200, 2, stat);
    CHECK(sd[0] > analytic / 1.5);
    CHECK(sd[0] < analytic * 1.5);
  }

  CHECK_THROWS_AS(
      bootstrap_std(5, 100, 0, [](const std::vector<int>&) { return std::vector<double>{}; }),
      DomainError);
}

TEST_CASE("epg_from_alpha") {
  CHECK(epg_from_alpha(1.0, 5.0 / 6.0) == 0.0);
  CHECK(epg_from_alpha(0.999, 5.0 / 6.0) ==
        doctest::Approx(0.0005 / (5.0 / 6.0)).epsilon(1e-12));
  CHECK_THROWS_AS(epg_from_alpha(1.2, 1.0), DomainError);
}

TEST_CASE("assignment_fidelity") {
  // Perfect separation.
  auto far = gen_iq_shots(1000.0, 4000, 0.5, 3);
  CHECK(assignment_fidelity(far) == doctest::Approx(1.0));
  // Zero separation: F -> 0.
  auto none = gen_iq_shots(0.0, 40000, 0.5, 4);
  CHECK(std::fabs(assignment_fidelity(none)) < 0.02);
  // Analytic tail-integral oracle F = 1 - 2 Q(sep/2) = 1 - erfc(sep / 2 sqrt 2).
  const double sep = 4.1;
  auto blobs = gen_iq_shots(sep, 200000, 0.5, 5);
  const double analytic = 1.0 - std::erfc(sep / 2.0 / std::sqrt(2.0));
  CHECK(assignment_fidelity(blobs) == doctest::Approx(analytic).epsilon(0.01));
  CHECK(analytic == doctest::Approx(0.96).epsilon(0.01));

  std::vector<IQShot> one_class(10);
  CHECK_THROWS_AS(assignment_fidelity(one_class), DomainError);
}
