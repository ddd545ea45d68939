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

namespace dkit {

enum class TraceKind { Ramsey, T1, EchoPlus, EchoMinus, Rabi };

std::string to_string(TraceKind kind);
TraceKind trace_kind_from_string(const std::string& s);

// Uniform or non-uniform sampled signal vs delay.
struct TimeTrace {
  std::vector<double> delays_us;
  std::vector<double> signal;
  TraceKind kind = TraceKind::Ramsey;

  std::size_t size() const { return delays_us.size(); }
  double span_us() const {
    return delays_us.empty() ? 0.0 : delays_us.back() - delays_us.front();
  }
  // Throws DomainError unless delays are strictly increasing and sizes match.
  void validate() const;
};

// CSV with a "delay_us,signal" header.
void write_trace_csv(const TimeTrace& trace, const std::string& path);
TimeTrace read_trace_csv(const std::string& path);

std::vector<double> linspace(double start, double stop, int points);

}  // namespace dkit
