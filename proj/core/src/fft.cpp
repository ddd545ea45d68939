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

#include "dkit/fft.hpp"

#include <cmath>
#include <cstddef>

#include "dkit/constants.hpp"
#include "dkit/errors.hpp"

namespace dkit {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0) return;
  if (!is_pow2(n)) throw DomainError("fft_pow2: size must be a power of two");

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? kTwoPi : -kTwoPi) / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv_n;
  }
}

std::vector<std::complex<double>> dft(std::vector<std::complex<double>> x,
                                      bool inverse) {
  const std::size_t n = x.size();
  if (n == 0) return x;
  if (is_pow2(n)) {
    fft_pow2(x, inverse);
    return x;
  }

  if (inverse) {
    // idft(x) = conj(dft(conj(x))) / n
    for (auto& z : x) z = std::conj(z);
    auto y = dft(std::move(x), false);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& z : y) z = std::conj(z) * inv_n;
    return y;
  }

  // Bluestein: X_k = w_k * (a (*) b)_k with a_n = x_n w_n, b_n = conj(w_n),
  // w_n = exp(-i pi n^2 / N). The phase index is reduced mod 2N to keep the
  // argument small for long transforms.
  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<std::complex<double>> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t q = (static_cast<std::uint64_t>(k) * k) % (2 * n);
    const double ang = -kPi * static_cast<double>(q) / static_cast<double>(n);
    w[k] = {std::cos(ang), std::sin(ang)};
  }

  std::vector<std::complex<double>> a(m, {0.0, 0.0});
  std::vector<std::complex<double>> b(m, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = x[k] * w[k];
    b[k] = std::conj(w[k]);
    if (k > 0) b[m - k] = std::conj(w[k]);
  }
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_pow2(a, true);

  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * w[k];
  return out;
}

std::vector<double> magnitude_spectrum(const std::vector<double>& x) {
  std::vector<std::complex<double>> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = {x[i], 0.0};
  auto spec = dft(std::move(z), false);
  std::vector<double> mag(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) mag[i] = std::abs(spec[i]);
  return mag;
}

}  // namespace dkit
