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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "dkit/device.hpp"
#include "dkit/errors.hpp"
#include "dkit/pipelines.hpp"

using namespace dkit;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("dkit_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
  std::string sub(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) { return json::parse(read_file(path)); }

// Two-qubit demo device with strongly asymmetric control-line couplings.
std::string small_device_json() {
  return R"({
    "qubits": [
      {"omega_q_GHz": 3.981, "alpha_MHz": -199, "E_C_MHz": 199, "E_J_over_E_C": 69},
      {"omega_q_GHz": 4.045, "alpha_MHz": -199, "E_C_MHz": 199, "E_J_over_E_C": 71}
    ],
    "resonators": [
      {"omega_r_GHz": 7.968, "kappa_ext_kHz": 118, "Q_int": 110000},
      {"omega_r_GHz": 8.083, "kappa_ext_kHz": 73, "Q_int": 75000}
    ],
    "pairs": [
      {"g_MHz": 124, "chi_kHz": -165},
      {"g_MHz": 126, "chi_kHz": -167}
    ],
    "J_kHz": [[0, 10], [10, 0]],
    "chi_cross_Hz": [[0, 4], [4, 0]],
    "eps_q_rad_per_sV": [[1.0e7, 2.0e4], [1.5e4, 1.1e7]],
    "eps_r_rad_per_sV": [[1.0e7, 1.2e4], [0.9e4, 0.95e7]],
    "lambda_q": [1.0, 1.0],
    "lambda_r": [1.0, 1.0]
  })";
}

}  // namespace

TEST_CASE("synth + analyze coherence recovers the generating lifetimes") {
  TempDir dir("coherence");
  const std::string cfg = dir.sub("config.json");
  write_file(cfg, R"({
    "kind": "coherence-suite",
    "qubits": [
      {"label": "Q1", "T1_us": 106, "T2_star_us": 95, "T2_echo_us": 101, "f_ramsey_MHz": 0.25},
      {"label": "Q2", "T1_us": 159, "T2_star_us": 104, "T2_echo_us": 116, "f_ramsey_MHz": 0.25}
    ],
    "repeats": {"t1": 4, "ramsey": 4, "echo": 4},
    "noise_sigma": 0.015,
    "t1_delays": {"start_us": 0, "stop_us": 400, "points": 120},
    "ramsey_delays": {"start_us": 0, "stop_us": 160, "points": 640},
    "echo_delays": {"start_us": 0, "stop_us": 350, "points": 120}
  })");
  RunOptions opts;
  opts.seed = 7;
  opts.jobs = 2;
  run_synth(cfg, dir.sub("data"), opts);
  CHECK(fs::exists(dir.sub("data/index.json")));
  CHECK(fs::exists(dir.sub("data/manifest.json")));

  run_analyze("coherence", dir.sub("data"), dir.sub("out"), opts);
  const json report = read_json(dir.sub("out/coherence_report.json"));
  REQUIRE(report.at("rows").size() == 2);
  const auto& q1 = report.at("rows")[0];
  CHECK(std::fabs(q1.at("T1_us").at("mean").get<double>() - 106.0) < 8.0);
  CHECK(std::fabs(q1.at("T2_star_us").at("mean").get<double>() - 95.0) < 8.0);
  CHECK(std::fabs(q1.at("T2_echo_us").at("mean").get<double>() - 101.0) < 8.0);
  const double tphi = q1.at("T_phi_e_us").at("value").get<double>();
  CHECK(std::fabs(tphi - 193.0) < 40.0);
}

TEST_CASE("synth rb is byte-deterministic across worker counts") {
  TempDir dir("rbdet");
  const std::string cfg = dir.sub("config.json");
  write_file(cfg, R"({
    "kind": "rb",
    "n_qubits": 2,
    "lengths": [1, 4, 16, 64, 180],
    "seeds": 6,
    "shots": 120,
    "noise": {"eps": {"10": 0.002, "01": 0.003}},
    "readout_error": 0.01
  })");
  RunOptions opts;
  opts.seed = 12;
  opts.jobs = 1;
  run_synth(cfg, dir.sub("a"), opts);
  opts.jobs = 5;
  run_synth(cfg, dir.sub("b"), opts);
  CHECK(read_file(dir.sub("a/rb_dataset.json")) == read_file(dir.sub("b/rb_dataset.json")));

  // And the analysis chain is reproducible too.
  run_analyze("rb", dir.sub("a/rb_dataset.json"), dir.sub("out_a"), opts);
  opts.jobs = 2;
  run_analyze("rb", dir.sub("b/rb_dataset.json"), dir.sub("out_b"), opts);
  CHECK(read_file(dir.sub("out_a/rb_report.json")) == read_file(dir.sub("out_b/rb_report.json")));
}

TEST_CASE("crosstalk pipeline on a two-qubit device") {
  TempDir dir("xtalk");
  write_file(dir.sub("device.json"), small_device_json());
  const std::string cfg = dir.sub("config.json");
  write_file(cfg, R"({
    "kind": "crosstalk-rabi",
    "device": "device.json",
    "n_voltages": 6,
    "target_rabi_MHz": 1.5,
    "trace": {"points": 512, "span_us": 20, "decay_T_us": 50, "noise_sigma": 0.02}
  })");
  RunOptions opts;
  opts.seed = 3;
  opts.jobs = 4;
  run_synth(cfg, dir.sub("data"), opts);
  run_analyze("crosstalk", dir.sub("data"), dir.sub("out"), opts);

  const json report = read_json(dir.sub("out/crosstalk_report.json"));
  CHECK(report.at("selectivity_kind") == "qubit");
  const auto db = report.at("db").get<std::vector<std::vector<double>>>();
  // Ground truth: (eps_01 / eps_11)^2 = (2e4 / 1.1e7)^2 -> -54.8 dB etc.
  const double expect01 = 20.0 * std::log10(2.0e4 / 1.1e7);
  const double expect10 = 20.0 * std::log10(1.5e4 / 1.0e7);
  CHECK(db[0][0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::fabs(db[0][1] - expect01) < 1.0);
  CHECK(std::fabs(db[1][0] - expect10) < 1.0);
  CHECK(report.contains("j_bound_kHz"));
}

TEST_CASE("predict-band emits the model numbers and plot files") {
  TempDir dir("band");
  write_file(dir.sub("lattice.json"), R"({
    "a_mm": 2.0, "r_mm": 0.25, "C": 1.31,
    "layers": [
      {"thickness_um": 475, "eps_rel": 11.45},
      {"thickness_um": 125, "eps_rel": 1.0}
    ],
    "reference": {"cutoff_GHz": 34.3, "curvature_GHz_mm2": 4.5, "band_top_GHz": 39.5}
  })");
  RunOptions opts;
  run_predict_band(dir.sub("lattice.json"), dir.sub("out"), opts);
  const json report = read_json(dir.sub("out/band_prediction.json"));
  CHECK(std::fabs(report.at("omega_p_GHz").get<double>() - 35.9) < 0.1);
  CHECK(std::fabs(report.at("curvature_GHz_mm2").get<double>() - 8.8) < 0.1);
  CHECK(report.at("cutoff_ratio_model_over_reference").get<double>() ==
        doctest::Approx(35.93 / 34.3).epsilon(0.01));
  CHECK(fs::exists(dir.sub("out/dispersion.csv")));
  CHECK(fs::exists(dir.sub("out/coupling_profile.csv")));
  // 10 x 10 grid -> 100 x 100 map.
  std::ifstream map(dir.sub("out/coupling_map.csv"));
  int rows = 0;
  std::string line;
  int cols = 0;
  while (std::getline(map, line)) {
    if (rows == 0) cols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
    ++rows;
  }
  CHECK(rows == 100);
  CHECK(cols == 100);

  // Geometry with r >= a/2 is rejected.
  write_file(dir.sub("bad.json"), R"({"a_mm": 2.0, "r_mm": 1.0})");
  CHECK_THROWS_AS(run_predict_band(dir.sub("bad.json"), dir.sub("out2"), opts), ConfigError);
}

TEST_CASE("report renders device tables and band predictions") {
  TempDir dir("report");
  fs::create_directories(dir.sub("in"));
  write_file(dir.sub("in/device.json"), small_device_json());
  write_file(dir.sub("lattice.json"), R"({"a_mm": 2.0, "r_mm": 0.25})");
  RunOptions opts;
  run_predict_band(dir.sub("lattice.json"), dir.sub("in"), opts);
  run_report(dir.sub("in"), dir.sub("out"));
  CHECK(fs::exists(dir.sub("out/device_tables.txt")));
  CHECK(fs::exists(dir.sub("out/band_prediction.txt")));
  const std::string tables = read_file(dir.sub("out/device_tables.txt"));
  CHECK(tables.find("chi model") != std::string::npos);
}

TEST_CASE("analyze rejects unknown kinds and missing inputs") {
  TempDir dir("errors");
  RunOptions opts;
  CHECK_THROWS_AS(run_analyze("nope", dir.str(), dir.sub("out"), opts), ConfigError);
  CHECK_THROWS_AS(run_analyze("rb", dir.sub("absent.json"), dir.sub("out"), opts),
                  ConfigError);
}
