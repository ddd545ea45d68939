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

#include "dkit/bessel.hpp"

#include <cmath>

#include "dkit/constants.hpp"
#include "dkit/errors.hpp"

namespace dkit {

double bessel_i0(double x) {
  const double q = x * x / 4.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

namespace {

// Ascending series, converges for all x but is used below the crossover only:
//   K0(x) = -(ln(x/2) + gamma) I0(x) + sum_{k>=1} (x^2/4)^k / (k!)^2 * H_k
double k0_series(double x) {
  const double q = x * x / 4.0;
  const double lg = std::log(x / 2.0) + kEulerGamma;
  double term = 1.0;  // (x^2/4)^k / (k!)^2, k = 0
  double hk = 0.0;    // harmonic number H_k
  double sum_i0 = 1.0;
  double sum_h = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    hk += 1.0 / k;
    sum_i0 += term;
    sum_h += term * hk;
    if (term * (hk + 1.0) < 1e-18 * (sum_h + sum_i0)) break;
  }
  return -lg * sum_i0 + sum_h;
}

// Steed/Thompson-Barnett continued fraction (CF2) for K_nu at nu = 0,
// good to machine precision for x >= 2.
double k0_continued_fraction(double x) {
  constexpr double eps = 1e-16;
  constexpr int max_iter = 10000;

  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double delh = d;
  double h = delh;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;  // 1/4 - nu^2 with nu = 0
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= max_iter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) <= eps) {
      return std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
    }
  }
  throw DomainError("bessel_k0: continued fraction failed to converge");
}

}  // namespace

double bessel_k0(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k0: argument must be positive");
  return x <= 2.0 ? k0_series(x) : k0_continued_fraction(x);
}

}  // namespace dkit
