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

#include "dkit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "dkit/constants.hpp"
#include "dkit/errors.hpp"
#include "dkit/freq_est.hpp"

namespace dkit {

double FitResult::value(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw DomainError("FitResult: unknown parameter '" + name + "'");
}

double FitResult::error(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return std_errors.at(i);
  throw DomainError("FitResult: unknown parameter '" + name + "'");
}

namespace {

constexpr int kMaxIterations = 200;
constexpr double kRelTol = 1e-10;

struct LMModel {
  int n_params = 0;
  int n_residuals = 0;
  // Weighted residuals r_i = (y_i - f_i) / sigma_i and weighted Jacobian
  // J_ij = (df_i/dtheta_j) / sigma_i, row-major.
  std::function<void(const double*, double*)> residuals;
  std::function<void(const double*, double*)> jacobian;
  std::function<void(double*)> project;  // optional clamp onto the feasible box
};

struct LMOutcome {
  std::vector<double> theta;
  std::vector<double> std_errors;
  std::vector<double> covariance;  // row-major p x p
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Gaussian elimination with partial pivoting; a is destroyed.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r * n + col]) > std::fabs(a[pivot * n + col])) pivot = r;
    if (std::fabs(a[pivot * n + col]) < 1e-300) return false;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * b[c];
    b[r] = s / a[r * n + r];
  }
  return true;
}

double cost_of(const LMModel& model, const double* theta, std::vector<double>& r) {
  model.residuals(theta, r.data());
  double c = 0.0;
  for (double v : r) c += v * v;
  return c;
}

LMOutcome lm_minimize(const LMModel& model, std::vector<double> theta,
                      bool scale_errors_by_variance) {
  const int p = model.n_params;
  const int m = model.n_residuals;
  if (model.project) model.project(theta.data());

  std::vector<double> r(m), r_try(m), jac(static_cast<std::size_t>(m) * p);
  std::vector<double> hess(static_cast<std::size_t>(p) * p), grad(p);

  LMOutcome out;
  double cost = cost_of(model, theta.data(), r);
  double lambda = 1e-3;
  bool converged = false;
  int iter = 0;

  for (; iter < kMaxIterations && !converged; ++iter) {
    model.jacobian(theta.data(), jac.data());
    std::fill(hess.begin(), hess.end(), 0.0);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      const double* row = &jac[static_cast<std::size_t>(i) * p];
      for (int a = 0; a < p; ++a) {
        grad[a] += row[a] * r[i];
        for (int b = a; b < p; ++b) hess[a * p + b] += row[a] * row[b];
      }
    }
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < a; ++b) hess[a * p + b] = hess[b * p + a];

    bool stepped = false;
    for (int damp_tries = 0; damp_tries < 60; ++damp_tries) {
      std::vector<double> lhs = hess;
      std::vector<double> delta = grad;
      for (int a = 0; a < p; ++a)
        lhs[a * p + a] += lambda * std::max(hess[a * p + a], 1e-12);
      if (!solve_dense(lhs, delta, p)) {
        lambda *= 4.0;
        continue;
      }
      std::vector<double> trial = theta;
      for (int a = 0; a < p; ++a) trial[a] += delta[a];
      if (model.project) model.project(trial.data());
      const double trial_cost = cost_of(model, trial.data(), r_try);
      if (trial_cost <= cost) {
        double max_rel_step = 0.0;
        for (int a = 0; a < p; ++a)
          max_rel_step = std::max(max_rel_step,
                                  std::fabs(trial[a] - theta[a]) /
                                      (std::fabs(theta[a]) + 1e-12));
        const double drop = cost - trial_cost;
        theta = std::move(trial);
        std::swap(r, r_try);
        cost = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-14);
        stepped = true;
        if (drop <= kRelTol * (cost + 1e-300) || max_rel_step < 1e-13)
          converged = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e14) break;
    }
    if (!stepped) {
      // Damping exhausted: either at a minimum or stuck.
      double gnorm = 0.0;
      for (double g : grad) gnorm = std::max(gnorm, std::fabs(g));
      converged = gnorm <= 1e-8 * (cost + 1.0);
      break;
    }
  }

  out.theta = theta;
  out.residual_norm = std::sqrt(cost);
  out.converged = converged;
  out.iterations = iter;

  if (converged) {
    // Covariance from the (undamped) curvature at the solution.
    model.jacobian(theta.data(), jac.data());
    std::fill(hess.begin(), hess.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      const double* row = &jac[static_cast<std::size_t>(i) * p];
      for (int a = 0; a < p; ++a)
        for (int b = a; b < p; ++b) hess[a * p + b] += row[a] * row[b];
    }
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < a; ++b) hess[a * p + b] = hess[b * p + a];
    out.covariance.assign(static_cast<std::size_t>(p) * p, 0.0);
    bool ok = true;
    for (int col = 0; col < p && ok; ++col) {
      std::vector<double> lhs = hess;
      std::vector<double> e(p, 0.0);
      e[col] = 1.0;
      ok = solve_dense(lhs, e, p);
      for (int rrow = 0; rrow < p; ++rrow) out.covariance[rrow * p + col] = e[rrow];
    }
    double scale = 1.0;
    if (scale_errors_by_variance && m > p) scale = cost / (m - p);
    if (!ok) out.covariance.assign(static_cast<std::size_t>(p) * p, 0.0);
    for (auto& c : out.covariance) c *= scale;
    out.std_errors.resize(p);
    for (int a = 0; a < p; ++a) {
      const double v = out.covariance[a * p + a];
      out.std_errors[a] = v > 0 ? std::sqrt(v) : 0.0;
    }
  }
  return out;
}

FitResult pack_result(const LMOutcome& lm, std::vector<std::string> names) {
  FitResult res;
  res.names = std::move(names);
  res.values = lm.theta;
  if (lm.converged) res.std_errors = lm.std_errors;
  res.residual_norm = lm.residual_norm;
  res.converged = lm.converged;
  res.iterations = lm.iterations;
  return res;
}

// Log-linear slope for decay-time initialization: ln|y - B| vs t.
double init_decay_time(const std::vector<double>& t, const std::vector<double>& y,
                       double B, double A, double span) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = std::fabs(y[i] - B);
    if (d > std::max(0.05 * std::fabs(A), 1e-12)) {
      const double ly = std::log(d);
      sx += t[i];
      sy += ly;
      sxx += t[i] * t[i];
      sxy += t[i] * ly;
      ++n;
    }
  }
  if (n >= 2) {
    const double denom = n * sxx - sx * sx;
    if (std::fabs(denom) > 1e-300) {
      const double slope = (n * sxy - sx * sy) / denom;
      if (slope < -1e-300) {
        const double T = -1.0 / slope;
        return std::clamp(T, span * 1e-3, span * 1e3);
      }
    }
  }
  return span;
}

}  // namespace

FitResult fit_exp_decay(const TimeTrace& trace) {
  trace.validate();
  const std::size_t n = trace.size();
  if (n < 5) throw DomainError("fit_exp_decay: need at least 5 points");
  const auto& t = trace.delays_us;
  const auto& y = trace.signal;
  const auto [mn, mx] = std::minmax_element(y.begin(), y.end());
  if (*mx - *mn < 1e-12 * (std::fabs(*mx) + 1.0))
    throw DomainError("fit_exp_decay: constant trace, decay time unidentifiable");
  const double span = trace.span_us();

  const std::size_t tail = std::max<std::size_t>(3, n / 10);
  double B0 = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) B0 += y[i];
  B0 /= static_cast<double>(tail);
  double A0 = y[0] - B0;
  if (std::fabs(A0) < 1e-12) A0 = *mx - *mn;
  const double T0 = init_decay_time(t, y, B0, A0, span);

  LMModel model;
  model.n_params = 3;
  model.n_residuals = static_cast<int>(n);
  model.residuals = [&](const double* th, double* r) {
    for (std::size_t i = 0; i < n; ++i)
      r[i] = y[i] - (th[1] + th[0] * std::exp(-t[i] / th[2]));
  };
  model.jacobian = [&](const double* th, double* J) {
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::exp(-t[i] / th[2]);
      J[i * 3 + 0] = e;
      J[i * 3 + 1] = 1.0;
      J[i * 3 + 2] = th[0] * e * t[i] / (th[2] * th[2]);
    }
  };
  model.project = [span](double* th) {
    th[2] = std::clamp(th[2], span * 1e-6, span * 1e6);
  };

  auto lm = lm_minimize(model, {A0, B0, T0}, /*scale_errors_by_variance=*/true);
  auto res = pack_result(lm, {"A", "B", "T_us"});
  // Identifiability guard: the sampled span must actually constrain T.
  if (res.converged && res.value("T_us") > 2.0 * span) {
    res.converged = false;
    res.std_errors.clear();
  }
  return res;
}

FitResult fit_ramsey(const TimeTrace& trace) {
  trace.validate();
  const std::size_t n = trace.size();
  if (n < 8) throw DomainError("fit_ramsey: need at least 8 points");
  const auto& t = trace.delays_us;
  const auto& y = trace.signal;
  const double span = trace.span_us();

  double f0;
  try {
    f0 = gaussian_interp_frequency(trace).f_est_MHz;
  } catch (const DomainError&) {
    f0 = 1.0 / span;
  }
  double B0 = 0.0;
  for (double v : y) B0 += v;
  B0 /= static_cast<double>(n);
  double T0 = span;
  // Phase/amplitude from a linear regression at fixed (f0, T0):
  // y - B = env * (c cos wt - s sin wt).
  double scc = 0, sss = 0, scs = 0, syc = 0, sys = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double env = std::exp(-t[i] / T0);
    const double c = std::cos(kTwoPi * f0 * t[i]) * env;
    const double s = std::sin(kTwoPi * f0 * t[i]) * env;
    scc += c * c;
    sss += s * s;
    scs += c * s;
    syc += (y[i] - B0) * c;
    sys += (y[i] - B0) * s;
  }
  const double det = scc * sss - scs * scs;
  double c0 = 0.25, s0 = 0.0;
  if (std::fabs(det) > 1e-300) {
    c0 = (syc * sss - sys * scs) / det;
    s0 = (sys * scc - syc * scs) / det;
  }
  const double A0 = std::hypot(c0, s0);
  const double phi0 = std::atan2(-s0, c0);

  LMModel model;
  model.n_params = 5;
  model.n_residuals = static_cast<int>(n);
  model.residuals = [&](const double* th, double* r) {
    for (std::size_t i = 0; i < n; ++i)
      r[i] = y[i] - (th[1] + th[0] * std::cos(kTwoPi * th[3] * t[i] + th[4]) *
                                 std::exp(-t[i] / th[2]));
  };
  model.jacobian = [&](const double* th, double* J) {
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::exp(-t[i] / th[2]);
      const double arg = kTwoPi * th[3] * t[i] + th[4];
      const double c = std::cos(arg), s = std::sin(arg);
      J[i * 5 + 0] = c * e;
      J[i * 5 + 1] = 1.0;
      J[i * 5 + 2] = th[0] * c * e * t[i] / (th[2] * th[2]);
      J[i * 5 + 3] = -th[0] * s * e * kTwoPi * t[i];
      J[i * 5 + 4] = -th[0] * s * e;
    }
  };
  model.project = [span](double* th) {
    th[2] = std::clamp(th[2], span * 1e-6, span * 1e6);
  };

  auto lm = lm_minimize(model, {A0, B0, T0, f0, phi0}, true);
  return pack_result(lm, {"A", "B", "T_us", "f_MHz", "phi"});
}

FitResult fit_echo_pair(const TimeTrace& plus, const TimeTrace& minus) {
  plus.validate();
  minus.validate();
  if (plus.size() != minus.size())
    throw DomainError("fit_echo_pair: traces have different lengths");
  const std::size_t n = plus.size();
  for (std::size_t i = 0; i < n; ++i)
    if (std::fabs(plus.delays_us[i] - minus.delays_us[i]) >
        1e-9 * (std::fabs(plus.delays_us[i]) + 1.0))
      throw DomainError("fit_echo_pair: traces are on different delay grids");
  if (n < 5) throw DomainError("fit_echo_pair: need at least 5 points");

  const auto& t = plus.delays_us;
  const auto& yp = plus.signal;
  const auto& ym = minus.signal;
  const double span = plus.span_us();

  double B0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) B0 += 0.5 * (yp[i] + ym[i]);
  B0 /= static_cast<double>(n);
  std::vector<double> half_diff(n);
  for (std::size_t i = 0; i < n; ++i) half_diff[i] = 0.5 * (yp[i] - ym[i]);
  double A0 = half_diff[0];
  if (std::fabs(A0) < 1e-12) A0 = 0.5;
  const double T0 = init_decay_time(t, half_diff, 0.0, A0, span);

  LMModel model;
  model.n_params = 3;
  model.n_residuals = static_cast<int>(2 * n);
  model.residuals = [&](const double* th, double* r) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = th[0] * std::exp(-t[i] / th[2]);
      r[i] = yp[i] - (th[1] + d);
      r[n + i] = ym[i] - (th[1] - d);
    }
  };
  model.jacobian = [&](const double* th, double* J) {
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::exp(-t[i] / th[2]);
      const double dT = th[0] * e * t[i] / (th[2] * th[2]);
      J[i * 3 + 0] = e;
      J[i * 3 + 1] = 1.0;
      J[i * 3 + 2] = dT;
      J[(n + i) * 3 + 0] = -e;
      J[(n + i) * 3 + 1] = 1.0;
      J[(n + i) * 3 + 2] = -dT;
    }
  };
  model.project = [span](double* th) {
    th[2] = std::clamp(th[2], span * 1e-6, span * 1e6);
  };

  auto lm = lm_minimize(model, {A0, B0, T0}, true);
  return pack_result(lm, {"A", "B", "T2e_us"});
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y,
                     bool through_origin, const std::vector<double>& sigma) {
  const std::size_t n = x.size();
  if (y.size() != n) throw DomainError("fit_linear: size mismatch");
  if (!sigma.empty() && sigma.size() != n)
    throw DomainError("fit_linear: sigma size mismatch");
  const std::size_t min_points = through_origin ? 2 : 3;
  if (n < min_points) throw DomainError("fit_linear: too few points");

  std::vector<double> w(n, 1.0);
  const bool weighted = !sigma.empty();
  if (weighted)
    for (std::size_t i = 0; i < n; ++i) {
      if (!(sigma[i] > 0)) throw DomainError("fit_linear: sigmas must be positive");
      w[i] = 1.0 / (sigma[i] * sigma[i]);
    }

  LinearFit fit;
  fit.through_origin = through_origin;
  double rss = 0.0;
  if (through_origin) {
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += w[i] * x[i] * x[i];
      sxy += w[i] * x[i] * y[i];
    }
    if (sxx < 1e-300) throw DomainError("fit_linear: rank-deficient (all x are zero)");
    fit.slope = sxy / sxx;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.slope * x[i];
      rss += w[i] * r * r;
    }
    const double var_scale = weighted ? 1.0 : rss / static_cast<double>(n - 1);
    fit.slope_err = std::sqrt(var_scale / sxx);
    fit.reduced_chi2 = rss / static_cast<double>(n - 1);
  } else {
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sw += w[i];
      sx += w[i] * x[i];
      sy += w[i] * y[i];
      sxx += w[i] * x[i] * x[i];
      sxy += w[i] * x[i] * y[i];
    }
    const double det = sw * sxx - sx * sx;
    if (std::fabs(det) < 1e-300 * std::max(1.0, sxx))
      throw DomainError("fit_linear: rank-deficient (all x equal)");
    fit.slope = (sw * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - fit.slope * x[i] - fit.intercept;
      rss += w[i] * r * r;
    }
    const double var_scale = weighted ? 1.0 : rss / static_cast<double>(n - 2);
    fit.slope_err = std::sqrt(var_scale * sw / det);
    fit.intercept_err = std::sqrt(var_scale * sxx / det);
    fit.reduced_chi2 = rss / static_cast<double>(n - 2);
  }
  return fit;
}

FitResult fit_rb_curve(const std::vector<int>& lengths,
                       const std::vector<double>& means,
                       const std::vector<double>& errors) {
  const std::size_t n = lengths.size();
  if (means.size() != n) throw DomainError("fit_rb_curve: size mismatch");
  {
    std::vector<int> distinct = lengths;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 4)
      throw DomainError("fit_rb_curve: need at least 4 distinct lengths");
  }
  for (double v : means)
    if (!(std::fabs(v) <= 1.5))
      throw DomainError("fit_rb_curve: survival/correlator values out of range");

  std::vector<double> inv_sigma(n, 1.0);
  if (!errors.empty()) {
    if (errors.size() != n) throw DomainError("fit_rb_curve: errors size mismatch");
    // Guard against zero scatter cells; floor at a fraction of the median.
    std::vector<double> pos;
    for (double e : errors)
      if (e > 0) pos.push_back(e);
    double floor_sigma = 1e-6;
    if (!pos.empty()) {
      std::nth_element(pos.begin(), pos.begin() + pos.size() / 2, pos.end());
      floor_sigma = std::max(1e-3 * pos[pos.size() / 2], 1e-12);
    }
    for (std::size_t i = 0; i < n; ++i)
      inv_sigma[i] = 1.0 / std::max(errors[i], floor_sigma);
  }

  // Initialization: tail mean for B, log-linear decay for alpha.
  const std::size_t tail = std::max<std::size_t>(1, n / 5);
  double B0 = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) B0 += means[i];
  B0 /= static_cast<double>(tail);
  double A0 = means[0] - B0;
  if (std::fabs(A0) < 1e-9) A0 = 0.5;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (means[i] - B0) / A0;
    if (d > 0.02) {
      const double ly = std::log(d);
      sx += lengths[i];
      sy += ly;
      sxx += static_cast<double>(lengths[i]) * lengths[i];
      sxy += lengths[i] * ly;
      ++cnt;
    }
  }
  double alpha0 = 0.999;
  if (cnt >= 2) {
    const double denom = cnt * sxx - sx * sx;
    if (std::fabs(denom) > 1e-300) {
      const double slope = (cnt * sxy - sx * sy) / denom;
      alpha0 = std::clamp(std::exp(slope), 1e-6, 1.0);
    }
  }
  // Undo the m = lengths[0] offset baked into A0.
  if (alpha0 < 1.0 && lengths[0] > 0)
    A0 /= std::pow(alpha0, lengths[0]);

  LMModel model;
  model.n_params = 3;
  model.n_residuals = static_cast<int>(n);
  model.residuals = [&](const double* th, double* r) {
    for (std::size_t i = 0; i < n; ++i)
      r[i] = (means[i] - (th[2] + th[0] * std::pow(th[1], lengths[i]))) * inv_sigma[i];
  };
  model.jacobian = [&](const double* th, double* J) {
    for (std::size_t i = 0; i < n; ++i) {
      const double m = lengths[i];
      const double am = std::pow(th[1], m);
      J[i * 3 + 0] = am * inv_sigma[i];
      J[i * 3 + 1] = th[0] * m * (m >= 1 ? std::pow(th[1], m - 1) : 0.0) * inv_sigma[i];
      J[i * 3 + 2] = inv_sigma[i];
    }
  };
  model.project = [](double* th) { th[1] = std::clamp(th[1], 1e-12, 1.0); };

  auto lm = lm_minimize(model, {A0, alpha0, B0}, errors.empty());
  auto res = pack_result(lm, {"A", "alpha", "B"});
  if (res.converged && res.value("alpha") >= 1.0 - 1e-12) res.at_boundary = true;
  return res;
}

LeakageRBFit fit_leakage_rb(const std::vector<int>& lengths,
                            const std::vector<double>& leak_means,
                            const std::vector<double>& leak_errors,
                            const std::vector<double>& survival_means,
                            const std::vector<double>& survival_errors,
                            LeakageFitMode mode, double gates_per_clifford) {
  const std::size_t n = lengths.size();
  if (leak_means.size() != n || survival_means.size() != n)
    throw DomainError("fit_leakage_rb: size mismatch");
  if (!(gates_per_clifford > 0))
    throw DomainError("fit_leakage_rb: gates_per_clifford must be positive");
  for (double v : leak_means)
    if (v < -1e-9 || v > 1.0 + 1e-9)
      throw DomainError("fit_leakage_rb: leakage populations must lie in [0, 1]");

  LeakageRBFit out;

  // Leakage curve x(m) = L_inf (1 - lambda^m).
  std::vector<double> inv_sigma(n, 1.0);
  if (!leak_errors.empty()) {
    if (leak_errors.size() != n) throw DomainError("fit_leakage_rb: errors size mismatch");
    std::vector<double> pos;
    for (double e : leak_errors)
      if (e > 0) pos.push_back(e);
    double floor_sigma = 1e-9;
    if (!pos.empty()) {
      std::nth_element(pos.begin(), pos.begin() + pos.size() / 2, pos.end());
      floor_sigma = std::max(1e-3 * pos[pos.size() / 2], 1e-15);
    }
    for (std::size_t i = 0; i < n; ++i)
      inv_sigma[i] = 1.0 / std::max(leak_errors[i], floor_sigma);
  }

  double linf0 = std::max(leak_means.back() * 1.2, 1e-8);
  linf0 = std::min(linf0, 1.0);
  double lambda0 = 0.999;
  if (lengths.front() >= 1 && linf0 > 0) {
    const double frac = std::clamp(leak_means.front() / linf0, 1e-12, 0.999999);
    lambda0 = std::clamp(std::pow(1.0 - frac, 1.0 / lengths.front()), 1e-6, 1.0 - 1e-9);
  }

  LMModel leak_model;
  leak_model.n_params = 2;
  leak_model.n_residuals = static_cast<int>(n);
  leak_model.residuals = [&](const double* th, double* r) {
    for (std::size_t i = 0; i < n; ++i)
      r[i] = (leak_means[i] - th[0] * (1.0 - std::pow(th[1], lengths[i]))) * inv_sigma[i];
  };
  leak_model.jacobian = [&](const double* th, double* J) {
    for (std::size_t i = 0; i < n; ++i) {
      const double m = lengths[i];
      const double lm = std::pow(th[1], m);
      J[i * 2 + 0] = (1.0 - lm) * inv_sigma[i];
      J[i * 2 + 1] = -th[0] * m * (m >= 1 ? std::pow(th[1], m - 1) : 0.0) * inv_sigma[i];
    }
  };
  leak_model.project = [](double* th) {
    th[0] = std::clamp(th[0], 0.0, 1.0);
    th[1] = std::clamp(th[1], 1e-12, 1.0 - 1e-12);
  };

  auto leak_lm = lm_minimize(leak_model, {linf0, lambda0}, leak_errors.empty());
  out.L_inf = leak_lm.theta[0];
  out.lambda_L = leak_lm.theta[1];
  if (leak_lm.converged) {
    out.L_inf_err = leak_lm.std_errors[0];
    out.lambda_L_err = leak_lm.std_errors[1];
  }
  // Per-Clifford transfer rates: lambda = 1 - up - down, L_inf = up/(up+down).
  out.leak_up_per_clifford = out.L_inf * (1.0 - out.lambda_L);
  out.lpg = out.leak_up_per_clifford / gates_per_clifford;
  if (leak_lm.converged && leak_lm.covariance.size() == 4) {
    // Delta method on up = L_inf (1 - lambda).
    const double gL = 1.0 - out.lambda_L;
    const double gl = -out.L_inf;
    const double var = gL * gL * leak_lm.covariance[0] +
                       2.0 * gL * gl * leak_lm.covariance[1] +
                       gl * gl * leak_lm.covariance[3];
    out.lpg_err = var > 0 ? std::sqrt(var) / gates_per_clifford : 0.0;
  }

  // Survival decay.
  FitResult surv;
  if (mode == LeakageFitMode::ThreeParam) {
    surv = fit_rb_curve(lengths, survival_means, survival_errors);
    out.alpha = surv.value("alpha");
    if (surv.converged) out.alpha_err = surv.error("alpha");
    out.A = surv.value("A");
    out.B = surv.value("B");
    out.C = 0.0;
  } else {
    // B + A alpha^m + C lambda^m with lambda fixed by the leakage fit.
    std::vector<double> inv_s(n, 1.0);
    if (!survival_errors.empty()) {
      std::vector<double> pos;
      for (double e : survival_errors)
        if (e > 0) pos.push_back(e);
      double floor_sigma = 1e-6;
      if (!pos.empty()) {
        std::nth_element(pos.begin(), pos.begin() + pos.size() / 2, pos.end());
        floor_sigma = std::max(1e-3 * pos[pos.size() / 2], 1e-12);
      }
      for (std::size_t i = 0; i < n; ++i)
        inv_s[i] = 1.0 / std::max(survival_errors[i], floor_sigma);
    }
    auto seed_fit = fit_rb_curve(lengths, survival_means, survival_errors);
    const double lambda = out.lambda_L;
    LMModel m4;
    m4.n_params = 4;
    m4.n_residuals = static_cast<int>(n);
    m4.residuals = [&, lambda](const double* th, double* r) {
      for (std::size_t i = 0; i < n; ++i)
        r[i] = (survival_means[i] -
                (th[2] + th[0] * std::pow(th[1], lengths[i]) +
                 th[3] * std::pow(lambda, lengths[i]))) *
               inv_s[i];
    };
    m4.jacobian = [&, lambda](const double* th, double* J) {
      for (std::size_t i = 0; i < n; ++i) {
        const double m = lengths[i];
        J[i * 4 + 0] = std::pow(th[1], m) * inv_s[i];
        J[i * 4 + 1] = th[0] * m * (m >= 1 ? std::pow(th[1], m - 1) : 0.0) * inv_s[i];
        J[i * 4 + 2] = inv_s[i];
        J[i * 4 + 3] = std::pow(lambda, m) * inv_s[i];
      }
    };
    m4.project = [](double* th) { th[1] = std::clamp(th[1], 1e-12, 1.0); };
    auto lm4 = lm_minimize(m4,
                           {seed_fit.value("A"), seed_fit.value("alpha"),
                            seed_fit.value("B"), 0.0},
                           survival_errors.empty());
    surv = pack_result(lm4, {"A", "alpha", "B", "C"});
    out.alpha = surv.value("alpha");
    if (surv.converged) out.alpha_err = surv.error("alpha");
    out.A = surv.value("A");
    out.B = surv.value("B");
    out.C = surv.value("C");
  }

  out.epg = (1.0 - out.alpha) / 2.0 / gates_per_clifford;
  out.epg_err = out.alpha_err / 2.0 / gates_per_clifford;
  out.converged = leak_lm.converged && surv.converged;
  out.mode_warning =
      mode == LeakageFitMode::ThreeParam && out.epg < 10.0 * out.lpg;
  return out;
}

}  // namespace dkit
