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

#include <doctest.h>

#include "dkit/bessel.hpp"
#include "dkit/errors.hpp"

using namespace dkit;

namespace {

// Independent oracle: composite-Simpson quadrature of the defining integral
//   K0(x) = int_0^inf exp(-x cosh t) dt
// truncated where the integrand falls below 1e-320.
double k0_quadrature(double x) {
  const double t_max = std::acosh(700.0 / x) + 1.0;
  const int n = 400000;  // even
  const double h = t_max / n;
  auto f = [x](double t) { return std::exp(-x * std::cosh(t)); };
  double sum = f(0.0) + f(t_max);
  for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("bessel_k0 matches the integral-representation oracle") {
  for (double x : {0.1, 0.5, 1.0, 1.99, 2.0, 2.01, 3.0, 5.0, 8.0, 12.0, 20.0}) {
    const double ref = k0_quadrature(x);
    CHECK(std::fabs(bessel_k0(x) - ref) < 1e-9 * ref);
  }
}

TEST_CASE("bessel_k0 is continuous across the series/fraction crossover") {
  const double lo = bessel_k0(2.0 - 1e-9);
  const double hi = bessel_k0(2.0 + 1e-9);
  CHECK(std::fabs(lo - hi) < 1e-10 * lo);
}

TEST_CASE("bessel_k0 known values and limits") {
  // Classic tabulated value K0(1) = 0.421024438...
  CHECK(bessel_k0(1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-12));
  // Large-argument asymptotic form sqrt(pi/2x) e^-x.
  const double x = 30.0;
  const double asym = std::sqrt(3.14159265358979323846 / (2 * x)) * std::exp(-x);
  CHECK(bessel_k0(x) == doctest::Approx(asym).epsilon(0.01));
  CHECK_THROWS_AS(bessel_k0(0.0), DomainError);
  CHECK_THROWS_AS(bessel_k0(-1.0), DomainError);
}

TEST_CASE("bessel_i0 sanity") {
  CHECK(bessel_i0(0.0) == doctest::Approx(1.0));
  CHECK(bessel_i0(1.0) == doctest::Approx(1.2660658777520084).epsilon(1e-12));
}
