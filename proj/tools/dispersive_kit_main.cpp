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

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "dkit/errors.hpp"
#include "dkit/pipelines.hpp"
#include "dkit/version.hpp"

namespace {

// The master seed defaults to 0, may be set with --seed, and can be
// overridden by the DISPERSIVE_KIT_SEED environment variable.
std::uint64_t resolve_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("DISPERSIVE_KIT_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    std::fprintf(stderr, "warning: ignoring malformed DISPERSIVE_KIT_SEED '%s'\n", env);
  }
  return cli_seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dispersive-kit: synthetic qubit-characterization datasets and "
               "their analysis pipelines"};
  app.set_version_flag("--version", std::string(dkit::kVersion));
  app.require_subcommand(1);

  dkit::RunOptions opts;
  std::uint64_t cli_seed = 0;
  int jobs = 0;
  app.add_option("--seed", cli_seed, "Master seed (DISPERSIVE_KIT_SEED overrides)")
      ->capture_default_str();
  app.add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();

  std::string config_path, out_dir = ".", input_path, kind;

  auto* synth = app.add_subcommand("synth", "Generate synthetic datasets");
  synth->add_option("--config", config_path, "Generator config JSON")->required();
  synth->add_option("--out", out_dir, "Output directory")->required();

  auto* analyze = app.add_subcommand("analyze", "Run an analysis pipeline");
  analyze->add_option("--kind", kind,
                      "coherence|crosstalk|rb|corr-rb|leakage-rb")->required();
  analyze->add_option("--in", input_path, "Dataset file or directory")->required();
  analyze->add_option("--out", out_dir, "Output directory")->required();
  analyze->add_option("--sigma-ratio", opts.sigma_ratio,
                      "Gaussian window sigma as a fraction of the trace span")
      ->capture_default_str();
  analyze->add_option("--bootstrap", opts.bootstrap, "Bootstrap resamples")
      ->capture_default_str();
  analyze->add_option("--tau-g-ns", opts.tau_g_ns,
                      "Physical gate period for coherence-limited EPG")
      ->capture_default_str();

  auto* band = app.add_subcommand("predict-band", "Plasma-model band prediction");
  band->add_option("--config", config_path, "Lattice spec JSON")->required();
  band->add_option("--out", out_dir, "Output directory")->required();

  auto* report = app.add_subcommand("report", "Render report JSONs as text tables");
  report->add_option("--in", input_path, "Directory of report JSONs")->required();
  report->add_option("--out", out_dir, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  opts.seed = resolve_seed(cli_seed);
  opts.jobs = jobs;

  try {
    if (synth->parsed()) {
      dkit::run_synth(config_path, out_dir, opts);
    } else if (analyze->parsed()) {
      dkit::run_analyze(kind, input_path, out_dir, opts);
    } else if (band->parsed()) {
      dkit::run_predict_band(config_path, out_dir, opts);
    } else if (report->parsed()) {
      dkit::run_report(input_path, out_dir);
    }
  } catch (const dkit::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const dkit::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
