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

#include "dkit/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dkit/errors.hpp"

namespace dkit {

std::string to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::Ramsey: return "ramsey";
    case TraceKind::T1: return "t1";
    case TraceKind::EchoPlus: return "echo_plus";
    case TraceKind::EchoMinus: return "echo_minus";
    case TraceKind::Rabi: return "rabi";
  }
  return "unknown";
}

TraceKind trace_kind_from_string(const std::string& s) {
  if (s == "ramsey") return TraceKind::Ramsey;
  if (s == "t1") return TraceKind::T1;
  if (s == "echo_plus") return TraceKind::EchoPlus;
  if (s == "echo_minus") return TraceKind::EchoMinus;
  if (s == "rabi") return TraceKind::Rabi;
  throw ConfigError("unknown trace kind '" + s + "'");
}

void TimeTrace::validate() const {
  if (delays_us.size() != signal.size())
    throw DomainError("TimeTrace: delays and signal lengths differ");
  for (std::size_t i = 1; i < delays_us.size(); ++i)
    if (!(delays_us[i] > delays_us[i - 1]))
      throw DomainError("TimeTrace: delays must be strictly increasing");
}

void write_trace_csv(const TimeTrace& trace, const std::string& path) {
  trace.validate();
  std::ofstream out(path);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << "delay_us,signal\n";
  char buf[64];
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", trace.delays_us[i],
                  trace.signal[i]);
    out << buf;
  }
}

TimeTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open trace file");
  TimeTrace trace;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
  // Header is required but the kind tag is not stored in the CSV; callers
  // that care set it from context.
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    double t = 0.0, s = 0.0;
    char comma = 0;
    if (!(ss >> t >> comma >> s) || comma != ',')
      throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed row");
    trace.delays_us.push_back(t);
    trace.signal.push_back(s);
  }
  trace.validate();
  return trace;
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 2) throw DomainError("linspace: need at least 2 points");
  std::vector<double> v(points);
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) v[i] = start + step * i;
  v.back() = stop;
  return v;
}

}  // namespace dkit
