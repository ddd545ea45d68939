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
#include <cstdio>
#include <filesystem>

#include <doctest.h>

#include "dkit/clifford.hpp"
#include "dkit/fit.hpp"
#include "dkit/rb_analysis.hpp"
#include "dkit/rb_sim.hpp"

using namespace dkit;

namespace {

RBConfig base_config() {
  RBConfig cfg;
  cfg.n_qubits = 1;
  cfg.lengths = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 900};
  cfg.seeds = 24;
  cfg.shots = 600;
  cfg.master_seed = 99;
  cfg.jobs = 2;
  return cfg;
}

}  // namespace

TEST_CASE("noiseless RB returns all-zero outcomes") {
  RBConfig cfg = base_config();
  cfg.seeds = 4;
  cfg.shots = 50;
  const RBDataset ds = simulate_rb(cfg);
  for (const auto& per_seed : ds.outcomes)
    for (const auto& shots : per_seed)
      for (auto b : shots) CHECK(b == 0);
}

TEST_CASE("single-qubit depolarizing channel matches the closed-form expectation") {
  RBConfig cfg = base_config();
  const double eps = 4e-3;
  const double ro = 0.02;
  cfg.noise.eps = {{1u, eps}};
  cfg.readout_error = {ro};
  cfg.seeds = 40;
  cfg.shots = 2000;
  const RBDataset ds = simulate_rb(cfg);

  // Exactly: <Z>(m) = (1 - 2 ro) (1 - eps)^(m+1), survival = (1 + <Z>)/2.
  const auto curve = survival_probability(ds, 0);
  for (std::size_t i = 0; i < curve.lengths.size(); ++i) {
    const double m = curve.lengths[i];
    const double expect = 0.5 + 0.5 * (1 - 2 * ro) * std::pow(1 - eps, m + 1);
    const double sigma = std::sqrt(expect * (1 - expect) /
                                   (cfg.seeds * static_cast<double>(cfg.shots)));
    CHECK(std::fabs(curve.mean[i] - expect) < 5.0 * sigma + 1e-9);
  }

  auto fit = fit_rb_curve(curve.lengths, curve.mean, curve.stderr_mean);
  REQUIRE(fit.converged);
  CHECK(std::fabs(fit.value("alpha") - (1 - eps)) < 4.0 * fit.error("alpha"));
}

TEST_CASE("product channel factorizes; correlated channel does not") {
  RBConfig cfg = base_config();
  cfg.n_qubits = 2;
  cfg.lengths = {1, 8, 32, 64, 128, 200, 300, 400};
  cfg.seeds = 30;
  cfg.shots = 3000;

  SUBCASE("independent single-qubit channels") {
    cfg.noise.eps = {{1u, 4e-3}, {2u, 6e-3}};
    const RBDataset ds = simulate_rb(cfg);
    const auto c12 = z_correlators(ds, 3u);
    const auto c1 = z_correlators(ds, 1u);
    const auto c2 = z_correlators(ds, 2u);
    for (std::size_t i = 0; i < c12.lengths.size(); ++i) {
      // Independent channels: alpha_12 = alpha_1 alpha_2 exactly, so compare
      // against the analytic expectation rather than the noisy product.
      const double m = c12.lengths[i];
      const double expect = std::pow((1 - 4e-3) * (1 - 6e-3), m + 1);
      const double sigma = std::max(c12.stderr_mean[i], 1e-4);
      CHECK(std::fabs(c12.mean[i] - expect) < 5.0 * sigma);
      const double product = c1.mean[i] * c2.mean[i];
      CHECK(std::fabs(c12.mean[i] - product) < 6.0 * sigma);
    }
  }

  SUBCASE("weight-2 channel decouples the correlator from the product") {
    const double eps = 8e-3;
    cfg.noise.eps = {{3u, eps}};
    const RBDataset ds = simulate_rb(cfg);
    const auto c12 = z_correlators(ds, 3u);
    const auto c1 = z_correlators(ds, 1u);
    const auto c2 = z_correlators(ds, 2u);
    // A correlated depolarizing event hits both qubits at once: the pair
    // correlator decays like (1-eps)^m while the product of the singles
    // decays like (1-eps)^2m, so at long m the correlator sits well above
    // the product.
    const std::size_t last = c12.lengths.size() - 1;
    const double m = c12.lengths[last];
    const double expect_corr = std::pow(1 - eps, m + 1);
    const double expect_prod = std::pow(1 - eps, 2 * (m + 1));
    CHECK(std::fabs(c12.mean[last] - expect_corr) < 6.0 * std::max(c12.stderr_mean[last], 1e-4));
    const double product = c1.mean[last] * c2.mean[last];
    CHECK(std::fabs(product - expect_prod) < 0.05);
    CHECK(c12.mean[last] - product > 0.1);
  }
}

TEST_CASE("rb simulation is deterministic and independent of worker count") {
  RBConfig cfg = base_config();
  cfg.noise.eps = {{1u, 2e-3}};
  cfg.readout_error = {0.01};
  cfg.seeds = 8;
  cfg.shots = 200;
  cfg.jobs = 1;
  const RBDataset a = simulate_rb(cfg);
  cfg.jobs = 7;
  const RBDataset b = simulate_rb(cfg);
  CHECK(a.outcomes == b.outcomes);
  CHECK(a.gate_counts == b.gate_counts);
}

TEST_CASE("leakage population follows the averaged Markov chain") {
  RBConfig cfg = base_config();
  cfg.lengths = {1, 50, 150, 300, 600, 1000, 1500, 2200, 3000};
  cfg.seeds = 24;
  cfg.shots = 1500;
  cfg.noise.leak_up_per_gate = 3e-4;
  cfg.noise.leak_down_per_gate = 1.5e-3;
  const RBDataset ds = simulate_rb(cfg);
  REQUIRE(ds.has_leakage);

  // Oracle: per-layer transfer probabilities averaged over the uniform
  // Clifford draw (physical pulse count 0 w.p. 4/24, 1 w.p. 20/24).
  const double gpc = CliffordGroup::instance().average_physical_gates();
  const double p_up = gpc * cfg.noise.leak_up_per_gate;
  const double p_down = gpc * cfg.noise.leak_down_per_gate;
  const auto leak = leakage_population(ds, 0);
  for (std::size_t i = 0; i < leak.lengths.size(); ++i) {
    double pop = 0.0;
    for (int t = 0; t <= leak.lengths[i]; ++t)
      pop = pop * (1 - p_down) + (1 - pop) * p_up;
    const double sigma = std::sqrt(std::max(pop * (1 - pop), 1e-8) /
                                   (cfg.seeds * static_cast<double>(cfg.shots)));
    CHECK(std::fabs(leak.mean[i] - pop) < 5.0 * sigma + 2e-4);
  }
}

TEST_CASE("rb dataset json round trip") {
  RBConfig cfg = base_config();
  cfg.n_qubits = 3;
  cfg.lengths = {1, 5, 9};
  cfg.seeds = 3;
  cfg.shots = 17;
  cfg.noise.eps = {{5u, 0.02}};
  cfg.readout_error = {0.01, 0.02, 0.03};
  const RBDataset ds = simulate_rb(cfg);

  const auto path = std::filesystem::temp_directory_path() / "dkit_rb_roundtrip.json";
  save_rb_dataset(ds, path.string());
  const RBDataset back = load_rb_dataset(path.string());
  CHECK(back.n_qubits == ds.n_qubits);
  CHECK(back.lengths == ds.lengths);
  CHECK(back.outcomes == ds.outcomes);
  CHECK(back.gate_counts == ds.gate_counts);
  CHECK(back.readout_error == ds.readout_error);
  std::filesystem::remove(path);
}
