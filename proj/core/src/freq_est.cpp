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

#include "dkit/freq_est.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "dkit/errors.hpp"
#include "dkit/fft.hpp"

namespace dkit {

namespace {

// Sample spacing; rejects non-uniform grids.
double uniform_dt_us(const TimeTrace& trace) {
  trace.validate();
  const std::size_t n = trace.size();
  if (n < 8) throw DomainError("freq_est: need at least 8 samples");
  const double dt = (trace.delays_us.back() - trace.delays_us.front()) /
                    static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double step = trace.delays_us[i] - trace.delays_us[i - 1];
    if (std::fabs(step - dt) > 1e-6 * dt)
      throw DomainError("freq_est: sampling is not uniform");
  }
  return dt;
}

std::vector<double> mean_subtracted(const std::vector<double>& y) {
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - mean;
  return out;
}

// Peak over bins [2, N/2]; bins 0 and 1 carry residual DC leakage.
int principal_peak(const std::vector<double>& mag, double floor_scale) {
  const std::size_t n = mag.size();
  int best = -1;
  double best_mag = 0.0;
  for (std::size_t k = 2; k <= n / 2; ++k) {
    if (mag[k] > best_mag) {
      best_mag = mag[k];
      best = static_cast<int>(k);
    }
  }
  if (best < 0 || best_mag <= 1e-12 * floor_scale)
    throw DomainError("freq_est: no non-DC spectral peak above the noise floor");
  return best;
}

}  // namespace

double naive_peak_frequency_MHz(const TimeTrace& trace) {
  const double dt = uniform_dt_us(trace);
  const std::size_t n = trace.size();
  auto y = mean_subtracted(trace.signal);
  double scale = 0.0;
  for (double v : y) scale += std::fabs(v);
  const auto mag = magnitude_spectrum(y);
  const int p = principal_peak(mag, scale);
  const double delta_f = 1.0 / (static_cast<double>(n) * dt);  // MHz
  return delta_f * p;
}

SpectrumPeak gaussian_interp_frequency(const TimeTrace& trace, double sigma_ratio) {
  if (!(sigma_ratio > 0)) throw DomainError("freq_est: sigma_ratio must be positive");
  const double dt = uniform_dt_us(trace);
  const std::size_t n = trace.size();
  const double total_T = static_cast<double>(n) * dt;
  const double sigma = sigma_ratio * total_T;

  auto y = mean_subtracted(trace.signal);
  // Window centered mid-trace (symmetric in sample index).
  const double center = 0.5 * static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (static_cast<double>(i) - center) * dt / sigma;
    y[i] *= std::exp(-0.5 * u * u);
  }
  double scale = 0.0;
  for (double v : y) scale += std::fabs(v);

  const auto mag = magnitude_spectrum(y);
  const int p = principal_peak(mag, scale);

  SpectrumPeak peak;
  peak.index = p;
  peak.delta_f_MHz = 1.0 / total_T;
  peak.s_prev = mag[p - 1];
  peak.s_peak = mag[p];
  peak.s_next = mag[p + 1];
  if (peak.s_prev <= 0.0 || peak.s_next <= 0.0)
    throw DomainError("freq_est: degenerate peak (vanishing side bin)");
  const double denom = 2.0 * std::log(peak.s_peak * peak.s_peak /
                                      (peak.s_prev * peak.s_next));
  if (!(std::fabs(denom) > 1e-300))
    throw DomainError("freq_est: degenerate peak (flat spectrum)");
  peak.delta_p = std::log(peak.s_next / peak.s_prev) / denom;
  peak.f_est_MHz = peak.delta_f_MHz * (p + peak.delta_p);
  return peak;
}

}  // namespace dkit
