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
#include <complex>
#include <vector>

#include <doctest.h>

#include "dkit/constants.hpp"
#include "dkit/fft.hpp"
#include "dkit/rng.hpp"

using namespace dkit;

TEST_CASE("rng: streams are reproducible and substreams independent") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Rng c = Rng::derive(1, {0, 0});
  Rng d = Rng::derive(1, {0, 1});
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (c.next() == d.next());
  CHECK(same == 0);

  Rng u(7);
  double mean = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    mean += v;
  }
  CHECK(std::fabs(mean / 20000 - 0.5) < 0.01);

  Rng g(9);
  double m1 = 0.0, m2 = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const double v = g.normal();
    m1 += v;
    m2 += v * v;
  }
  CHECK(std::fabs(m1 / n) < 0.02);
  CHECK(std::fabs(m2 / n - 1.0) < 0.03);
}

namespace {

// Quadratic-time reference transform.
std::vector<std::complex<double>> dft_reference(
    const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t t = 0; t < n; ++t) {
      const double ang = -kTwoPi * static_cast<double>(k * t % n) / static_cast<double>(n);
      out[k] += x[t] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
  return out;
}

}  // namespace

TEST_CASE("fft matches the brute-force transform") {
  Rng rng(123);
  for (std::size_t n : {std::size_t{64}, std::size_t{100}, std::size_t{257}}) {
    std::vector<std::complex<double>> x(n);
    for (auto& z : x) z = {rng.normal(), rng.normal()};
    const auto fast = dft(x);
    const auto slow = dft_reference(x);
    double max_err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      max_err = std::max(max_err, std::abs(fast[k] - slow[k]));
      scale = std::max(scale, std::abs(slow[k]));
    }
    CHECK(max_err < 1e-9 * scale);

    // Round trip.
    const auto back = dft(fast, /*inverse=*/true);
    double rt = 0.0;
    for (std::size_t k = 0; k < n; ++k) rt = std::max(rt, std::abs(back[k] - x[k]));
    CHECK(rt < 1e-10);
  }
}

TEST_CASE("fft: on-bin sinusoid concentrates in a single bin") {
  const int n = 1024;
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = std::sin(kTwoPi * 10.0 * i / n);
  const auto mag = magnitude_spectrum(x);
  CHECK(mag[10] == doctest::Approx(n / 2.0).epsilon(1e-9));
  for (int k = 1; k < n / 2; ++k)
    if (k != 10) CHECK(mag[k] < 1e-8 * mag[10]);
}
