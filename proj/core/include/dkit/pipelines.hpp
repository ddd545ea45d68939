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

#include <cstdint>
#include <string>

namespace dkit {

struct RunOptions {
  std::uint64_t seed = 0;
  int jobs = 0;  // 0 = hardware concurrency
  double sigma_ratio = 0.2;
  int bootstrap = 100;
  double tau_g_ns = 24.0;  // physical gate period for coherence-limited EPG
};

// Config-driven dataset generation. Writes data files plus index.json and
// manifest.json into out_dir; reruns with the same config and seed are
// byte-identical regardless of the worker count.
// Config kinds: trace, coherence-suite, rb, iq, crosstalk-rabi,
// crosstalk-stark.
void run_synth(const std::string& config_path, const std::string& out_dir,
               const RunOptions& opts);

// Analysis pipelines; kind is one of coherence, rb, corr-rb, leakage-rb,
// crosstalk. input_path is a dataset file or a directory with index.json.
// Emits <kind>_report.json plus CSV plot data. Throws on fit failure.
void run_analyze(const std::string& kind, const std::string& input_path,
                 const std::string& out_dir, const RunOptions& opts);

// Band prediction from a lattice spec JSON: band_prediction.json,
// dispersion.csv, coupling_profile.csv, coupling_map.csv.
void run_predict_band(const std::string& config_path, const std::string& out_dir,
                      const RunOptions& opts);

// Renders every report JSON found in in_dir (plus device.json consistency
// tables) to aligned text files in out_dir.
void run_report(const std::string& in_dir, const std::string& out_dir);

}  // namespace dkit
