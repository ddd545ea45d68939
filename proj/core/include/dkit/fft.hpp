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

#include <complex>
#include <vector>

namespace dkit {

// In-place radix-2 Cooley-Tukey transform; a.size() must be a power of two.
// The inverse transform includes the 1/N normalization.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse = false);

// DFT of arbitrary length. Power-of-two sizes go through fft_pow2 directly;
// other sizes use Bluestein's chirp-z reduction to a power-of-two convolution.
std::vector<std::complex<double>> dft(std::vector<std::complex<double>> x,
                                      bool inverse = false);

// Convenience: spectrum magnitudes |X_k| of a real signal, all N bins.
std::vector<double> magnitude_spectrum(const std::vector<double>& x);

}  // namespace dkit
