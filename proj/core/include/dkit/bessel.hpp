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

namespace dkit {

// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

// Modified Bessel function of the second kind, order zero. Self-contained:
// the convergent ascending series below x = 2 and a Steed-style continued
// fraction above. Relative error is a few ulp everywhere (checked against a
// quadrature oracle in the tests, well inside the 1e-9 budget).
// Throws DomainError for x <= 0.
double bessel_k0(double x);

}  // namespace dkit
