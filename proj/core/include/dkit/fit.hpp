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

#include <string>
#include <vector>

#include "dkit/trace.hpp"

namespace dkit {

// All nonlinear fits share one damped (Levenberg-style) least-squares core:
// monotone non-increasing residual, adaptive damping, iteration cap 200,
// relative tolerance 1e-10. Standard errors come from the curvature at the
// solution; when per-point sigmas are supplied they are used as inverse
// variances (no chi^2 rescaling), otherwise the residual variance scales
// them.
struct FitResult {
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<double> std_errors;  // empty unless converged
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  bool at_boundary = false;  // a constrained parameter ended on its bound

  double value(const std::string& name) const;
  double error(const std::string& name) const;
};

// S = B + A exp(-t/T). Parameters {A, B, T_us}. Throws DomainError for a
// constant trace or fewer than 5 points; reports non-convergence when the
// fitted T is not identifiable on the sampled span.
FitResult fit_exp_decay(const TimeTrace& trace);

// S = B + A cos(2 pi f t + phi) exp(-t/T). Parameters
// {A, B, T_us, f_MHz, phi}; the frequency is seeded from the spectrum.
FitResult fit_ramsey(const TimeTrace& trace);

// Joint fit of the +/- echo branches sharing {A, B, T2e_us}:
// S_+ = B + A exp(-t/T2e), S_- = B - A exp(-t/T2e).
// Throws DomainError when the two traces are on different delay grids.
FitResult fit_echo_pair(const TimeTrace& plus, const TimeTrace& minus);

// Ordinary (optionally weighted) least squares, closed form.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_err = 0.0;
  double intercept_err = 0.0;
  double reduced_chi2 = 0.0;  // meaningful when sigmas are supplied
  bool through_origin = true;
};
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y,
                     bool through_origin,
                     const std::vector<double>& sigma = {});

// Survival curve B + A alpha^m with alpha constrained to (0, 1]. Weighted by
// the supplied per-length standard errors (sequence-to-sequence scatter).
// alpha pinned at 1 is reported with at_boundary = true.
FitResult fit_rb_curve(const std::vector<int>& lengths,
                       const std::vector<double>& means,
                       const std::vector<double>& errors = {});

enum class LeakageFitMode { ThreeParam, FourParam };

struct LeakageRBFit {
  // Leakage-population curve x(m) = L_inf (1 - lambda_L^m).
  double L_inf = 0.0, lambda_L = 1.0;
  double L_inf_err = 0.0, lambda_L_err = 0.0;
  // Derived per-Clifford transfer and per-physical-gate rates.
  double leak_up_per_clifford = 0.0;
  double lpg = 0.0, lpg_err = 0.0;
  // Survival decay: three-param B + A alpha^m, four-param adds C lambda_L^m
  // with lambda_L imported from the leakage fit.
  double alpha = 1.0, alpha_err = 0.0;
  double A = 0.0, B = 0.0, C = 0.0;
  double epg = 0.0, epg_err = 0.0;
  bool converged = false;
  bool mode_warning = false;  // three-param mode but EPG >> LPG does not hold
};

LeakageRBFit fit_leakage_rb(const std::vector<int>& lengths,
                            const std::vector<double>& leak_means,
                            const std::vector<double>& leak_errors,
                            const std::vector<double>& survival_means,
                            const std::vector<double>& survival_errors,
                            LeakageFitMode mode, double gates_per_clifford);

}  // namespace dkit
