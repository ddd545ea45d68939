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

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Exact by SI definition.
inline constexpr double kSpeedOfLightMps = 299792458.0;

inline constexpr double kEulerGamma = 0.57721566490153286061;

// Unit helpers. All frequencies in this library are ordinary frequencies
// (Hz family); factors of 2*pi appear only inside formulas that need
// angular rates.
inline constexpr double kGHz = 1e9;
inline constexpr double kMHz = 1e6;
inline constexpr double kKHz = 1e3;

}  // namespace dkit
