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

#include "dkit/crosstalk.hpp"

#include <cmath>

#include "dkit/constants.hpp"
#include "dkit/errors.hpp"
#include "dkit/fit.hpp"
#include "dkit/freq_est.hpp"

namespace dkit {

double SelectivityMatrix::db(int i, int j) const {
  return 10.0 * std::log10(at(i, j));
}

namespace {

void check_square(const Matrix& m, const char* what) {
  const std::size_t n = m.size();
  if (n == 0) throw DomainError(std::string(what) + ": empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw DomainError(std::string(what) + ": matrix must be square");
}

}  // namespace

SelectivityMatrix qubit_selectivity(const Matrix& k_slopes) {
  check_square(k_slopes, "qubit_selectivity");
  const int n = static_cast<int>(k_slopes.size());
  SelectivityMatrix out;
  out.kind = SelectivityMatrix::Kind::Qubit;
  out.n = n;
  out.phi.assign(static_cast<std::size_t>(n) * n, 0.0);
  out.is_upper_bound.assign(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j)
    if (!(k_slopes[j][j] > 0))
      throw DomainError("qubit_selectivity: diagonal slope must be positive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double r = k_slopes[i][j] / k_slopes[j][j];
      out.phi[static_cast<std::size_t>(i) * n + j] = r * r;
    }
  return out;
}

SelectivityMatrix resonator_selectivity(const Matrix& k_prime_slopes,
                                        const std::vector<double>& chi_diag_kHz,
                                        double delta_d_MHz,
                                        const std::vector<double>& kappa_total_kHz) {
  check_square(k_prime_slopes, "resonator_selectivity");
  const int n = static_cast<int>(k_prime_slopes.size());
  if (chi_diag_kHz.size() != static_cast<std::size_t>(n))
    throw DomainError("resonator_selectivity: chi list size mismatch");
  for (double chi : chi_diag_kHz)
    if (chi == 0.0) throw DomainError("resonator_selectivity: chi must be nonzero");

  SelectivityMatrix out;
  out.kind = SelectivityMatrix::Kind::Resonator;
  out.n = n;
  out.phi.assign(static_cast<std::size_t>(n) * n, 0.0);
  out.is_upper_bound.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        out.phi[static_cast<std::size_t>(i) * n + j] = 1.0;
        continue;
      }
      const double v = (chi_diag_kHz[j] / chi_diag_kHz[i]) *
                       (k_prime_slopes[i][j] / k_prime_slopes[j][j]);
      out.phi[static_cast<std::size_t>(i) * n + j] = std::max(v, 0.0);
    }

  if (delta_d_MHz != 0.0) {
    const double dd_kHz = std::fabs(delta_d_MHz) * 1e3;
    for (int i = 0; i < n; ++i) {
      if (dd_kHz < 10.0 * std::fabs(chi_diag_kHz[i])) out.validity_warning = true;
      if (!kappa_total_kHz.empty() && dd_kHz < 10.0 * kappa_total_kHz[i])
        out.validity_warning = true;
    }
  }
  return out;
}

Matrix bound_parasitic_J_kHz(const SelectivityMatrix& phi,
                             const std::vector<double>& omega_q_GHz) {
  if (phi.kind != SelectivityMatrix::Kind::Qubit)
    throw DomainError("bound_parasitic_J: qubit-kind selectivity required");
  const int n = phi.n;
  if (omega_q_GHz.size() != static_cast<std::size_t>(n))
    throw DomainError("bound_parasitic_J: frequency list size mismatch");
  Matrix bound(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double delta_kHz = std::fabs(omega_q_GHz[i] - omega_q_GHz[j]) * 1e6;
      if (delta_kHz < 1.0)
        throw DomainError("bound_parasitic_J: equal qubit frequencies give a vacuous bound");
      bound[i][j] = std::sqrt(std::min(phi.at(i, j), phi.at(j, i))) * delta_kHz;
    }
  return bound;
}

double bound_parasitic_chi_Hz(double freq_resolution_Hz, double n_bar_driven) {
  if (!(n_bar_driven > 0)) throw DomainError("bound_parasitic_chi: n_bar must be positive");
  return freq_resolution_Hz / (2.0 * n_bar_driven);
}

EpsilonJ epsilon_J_perturbative(double eps_jj, double J, double delta_q,
                                double alpha_j, double V) {
  if (delta_q == 0.0) throw DomainError("epsilon_J_perturbative: zero detuning");
  EpsilonJ out;
  const double drive = eps_jj * V;
  const double x = drive / delta_q;
  out.validity_warning = std::fabs(x) > 0.3;
  const double bracket = 1.0 - 2.0 * x * x +
                         4.0 * drive * drive / (delta_q * (2.0 * delta_q - alpha_j));
  out.value = eps_jj * (J / delta_q) * bracket;
  return out;
}

double total_rabi_rate(double eps_q, double eps_J, double phase) {
  const double s = eps_q * eps_q + eps_J * eps_J +
                   2.0 * eps_q * eps_J * std::cos(phase);
  return std::sqrt(std::max(s, 0.0));
}

namespace {

SlopeEstimate slope_from_frequencies(const std::vector<DrivePoint>& points,
                                     double sigma_ratio, bool through_origin) {
  if (points.size() < 3)
    throw DomainError("slope estimate: need at least 3 drive points");
  std::vector<double> x, y;
  for (const auto& p : points) {
    x.push_back(p.drive);
    const auto peak = gaussian_interp_frequency(p.trace, sigma_ratio);
    y.push_back(kTwoPi * peak.f_est_MHz * 1e6);  // rad/s
  }
  const auto fit = fit_linear(x, y, through_origin);
  SlopeEstimate est;
  est.k = fit.slope;
  est.k_err = fit.slope_err;
  est.consistent_with_zero = std::fabs(fit.slope) < 2.0 * fit.slope_err;
  return est;
}

}  // namespace

SlopeEstimate rabi_rate_slope(const std::vector<DrivePoint>& points,
                              double sigma_ratio) {
  return slope_from_frequencies(points, sigma_ratio, /*through_origin=*/true);
}

SlopeEstimate stark_shift_slope(const std::vector<DrivePoint>& points,
                                double sigma_ratio) {
  // The zero-power Ramsey detuning sits in the intercept; the Stark shift is
  // the slope.
  return slope_from_frequencies(points, sigma_ratio, /*through_origin=*/false);
}

}  // namespace dkit
