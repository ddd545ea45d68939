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

#include "dkit/synth.hpp"

#include <cmath>

#include "dkit/constants.hpp"
#include "dkit/errors.hpp"
#include "dkit/rng.hpp"

namespace dkit {

namespace {

double model_value(TraceKind kind, const DecayTraceParams& p, double t_us) {
  const double decay = std::exp(-t_us / p.T_us);
  switch (kind) {
    case TraceKind::T1:
    case TraceKind::EchoPlus:
      return p.offset + p.amplitude * decay;
    case TraceKind::EchoMinus:
      return p.offset - p.amplitude * decay;
    case TraceKind::Ramsey:
      return p.offset + p.amplitude * std::cos(kTwoPi * p.f_detune_MHz * t_us) * decay;
    case TraceKind::Rabi:
      return p.offset - p.amplitude * std::cos(kTwoPi * p.f_detune_MHz * t_us) * decay;
  }
  throw DomainError("gen_decay_trace: invalid trace kind");
}

}  // namespace

TimeTrace gen_decay_trace(TraceKind kind, const DecayTraceParams& params,
                          const std::vector<double>& delays_us,
                          double noise_sigma, std::uint64_t seed) {
  if (!(params.T_us > 0)) throw DomainError("gen_decay_trace: T must be positive");
  if (params.offset - std::fabs(params.amplitude) < -1e-12 ||
      params.offset + std::fabs(params.amplitude) > 1.0 + 1e-12)
    throw DomainError("gen_decay_trace: noiseless signal must lie in [0, 1]");
  if (noise_sigma < 0) throw DomainError("gen_decay_trace: noise_sigma must be >= 0");

  TimeTrace trace;
  trace.kind = kind;
  trace.delays_us = delays_us;
  trace.signal.resize(delays_us.size());
  for (std::size_t i = 0; i < delays_us.size(); ++i)
    trace.signal[i] = model_value(kind, params, delays_us[i]);
  trace.validate();

  if (noise_sigma > 0) {
    Rng rng = Rng::derive(seed, {static_cast<std::uint64_t>(kind)});
    for (auto& s : trace.signal) s += noise_sigma * rng.normal();
  }
  return trace;
}

std::pair<TimeTrace, TimeTrace> gen_echo_pair(const DecayTraceParams& params,
                                              const std::vector<double>& delays_us,
                                              double noise_sigma,
                                              std::uint64_t seed) {
  SplitMix64 sm(seed);
  auto plus = gen_decay_trace(TraceKind::EchoPlus, params, delays_us, noise_sigma, sm.next());
  auto minus = gen_decay_trace(TraceKind::EchoMinus, params, delays_us, noise_sigma, sm.next());
  return {std::move(plus), std::move(minus)};
}

std::vector<IQShot> gen_iq_shots(double separation_sigma, int n_shots,
                                 double excited_prob, std::uint64_t seed) {
  if (n_shots <= 0) throw DomainError("gen_iq_shots: n_shots must be positive");
  if (separation_sigma < 0) throw DomainError("gen_iq_shots: separation must be >= 0");
  if (excited_prob < 0 || excited_prob > 1)
    throw DomainError("gen_iq_shots: excited_prob must lie in [0, 1]");

  Rng rng = Rng::derive(seed, {0x1Au});
  std::vector<IQShot> shots(n_shots);
  const double half = separation_sigma / 2.0;
  for (auto& s : shots) {
    s.prepared_excited = rng.bernoulli(excited_prob);
    const double center = s.prepared_excited ? half : -half;
    s.i = center + rng.normal();
    s.q = rng.normal();
    s.assigned_excited = s.i > 0.0;
  }
  return shots;
}

}  // namespace dkit
