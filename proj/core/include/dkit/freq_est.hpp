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

#include "dkit/trace.hpp"

namespace dkit {

// Principal spectral peak of a uniformly sampled trace, with the fractional
// bin offset recovered from the Gaussian-windowed side-bin amplitudes:
//   delta_p = ln(S_{p+1}/S_{p-1}) / (2 ln(S_p^2 / [S_{p-1} S_{p+1}]))
struct SpectrumPeak {
  int index = 0;        // bin p of the principal peak
  double delta_p = 0.0; // fractional offset, |delta_p| <= 0.5 in-model
  double f_est_MHz = 0.0;
  double delta_f_MHz = 0.0;  // bin spacing 1/T
  double s_prev = 0.0, s_peak = 0.0, s_next = 0.0;
};

// Largest non-DC bin of the raw spectrum: f = p * delta_f, resolution
// delta_f / 2. The trace mean is removed first; bins 0 and 1 are excluded
// from the peak search to keep residual-DC leakage out.
// Throws DomainError on non-uniform sampling, < 8 points, or a DC-only trace.
double naive_peak_frequency_MHz(const TimeTrace& trace);

// Gaussian-window interpolated estimate. The window has standard deviation
// sigma_ratio * T (default T/5) and is centered mid-trace.
// Throws DomainError additionally when the peak is degenerate
// (S_{p-1} S_{p+1} = 0 or a vanishing log denominator).
SpectrumPeak gaussian_interp_frequency(const TimeTrace& trace,
                                       double sigma_ratio = 0.2);

}  // namespace dkit
