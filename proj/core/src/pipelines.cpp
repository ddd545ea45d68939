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

#include "dkit/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dkit/band.hpp"
#include "dkit/constants.hpp"
#include "dkit/crosstalk.hpp"
#include "dkit/device.hpp"
#include "dkit/dispersive.hpp"
#include "dkit/errors.hpp"
#include "dkit/fit.hpp"
#include "dkit/manifest.hpp"
#include "dkit/parallel.hpp"
#include "dkit/rb_analysis.hpp"
#include "dkit/rb_sim.hpp"
#include "dkit/report.hpp"
#include "dkit/rng.hpp"
#include "dkit/synth.hpp"
#include "dkit/trace.hpp"
#include "dkit/version.hpp"

namespace dkit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kGeneratorImpedanceOhm = 50.0;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << j.dump(2) << "\n";
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Delay grids: either an explicit array or {start_us, stop_us, points}.
std::vector<double> delays_from_json(const json& j, const std::string& field) {
  if (!j.contains(field)) throw ConfigError("config: missing '" + field + "'");
  const json& d = j.at(field);
  if (d.is_array()) return d.get<std::vector<double>>();
  return linspace(d.value("start_us", 0.0), d.at("stop_us").get<double>(),
                  d.at("points").get<int>());
}

DecayTraceParams trace_params_from_json(const json& j) {
  DecayTraceParams p;
  p.T_us = j.value("T_us", 100.0);
  p.f_detune_MHz = j.value("f_detune_MHz", 0.0);
  p.amplitude = j.value("amplitude", 0.5);
  p.offset = j.value("offset", 0.5);
  return p;
}

DeviceParams device_from_config(const json& cfg, const std::string& config_dir) {
  if (!cfg.contains("device")) throw ConfigError("config: missing 'device'");
  const json& d = cfg.at("device");
  if (d.is_string()) {
    fs::path p = d.get<std::string>();
    if (p.is_relative()) p = fs::path(config_dir) / p;
    return load_device(p.string());
  }
  return parse_device_json(d.dump(), "config.device");
}

// ---------------------------------------------------------------------------
// synth kinds
// ---------------------------------------------------------------------------

std::vector<std::string> synth_trace(const json& cfg, const std::string& out_dir,
                                     std::uint64_t seed) {
  const std::string kind_str = cfg.at("trace_kind").get<std::string>();
  const auto delays = delays_from_json(cfg, "delays");
  const auto params = trace_params_from_json(cfg);
  const double noise = cfg.value("noise_sigma", 0.0);
  const int repeats = cfg.value("repeats", 1);

  std::vector<std::string> files;
  json index;
  index["report_kind"] = "trace_set";
  index["trace_kind"] = kind_str;
  index["truth"] = {{"T_us", params.T_us},
                    {"f_detune_MHz", params.f_detune_MHz},
                    {"amplitude", params.amplitude},
                    {"offset", params.offset},
                    {"noise_sigma", noise}};
  for (int r = 0; r < repeats; ++r) {
    char tag[32];
    std::snprintf(tag, sizeof(tag), "_r%03d", r);
    if (kind_str == "echo") {
      auto [plus, minus] = gen_echo_pair(params, delays, noise,
                                         seed + static_cast<std::uint64_t>(r));
      const std::string fp = "echo_plus" + std::string(tag) + ".csv";
      const std::string fm = "echo_minus" + std::string(tag) + ".csv";
      write_trace_csv(plus, out_dir + "/" + fp);
      write_trace_csv(minus, out_dir + "/" + fm);
      index["entries"].push_back({{"plus", fp}, {"minus", fm}});
      files.push_back(fp);
      files.push_back(fm);
    } else {
      const TraceKind kind = trace_kind_from_string(kind_str);
      auto trace = gen_decay_trace(kind, params, delays, noise,
                                   seed + static_cast<std::uint64_t>(r));
      const std::string f = kind_str + std::string(tag) + ".csv";
      write_trace_csv(trace, out_dir + "/" + f);
      index["entries"].push_back({{"file", f}});
      files.push_back(f);
    }
  }
  write_json_file(index, out_dir + "/index.json");
  files.push_back("index.json");
  return files;
}

std::vector<std::string> synth_coherence_suite(const json& cfg,
                                               const std::string& out_dir,
                                               std::uint64_t seed) {
  const double noise = cfg.value("noise_sigma", 0.02);
  const json& repeats = cfg.at("repeats");
  const int n_t1 = repeats.value("t1", 5);
  const int n_ramsey = repeats.value("ramsey", 5);
  const int n_echo = repeats.value("echo", 5);
  const auto t1_delays = delays_from_json(cfg, "t1_delays");
  const auto ramsey_delays = delays_from_json(cfg, "ramsey_delays");
  const auto echo_delays = delays_from_json(cfg, "echo_delays");

  std::vector<std::string> files;
  json index;
  index["report_kind"] = "coherence_suite";
  int qi = 0;
  for (const auto& q : cfg.at("qubits")) {
    const std::string label = q.value("label", "Q" + std::to_string(qi + 1));
    json entry;
    entry["label"] = label;
    entry["truth"] = q;
    SplitMix64 mix(seed + 0x100u * qi);

    DecayTraceParams t1p;
    t1p.T_us = q.at("T1_us").get<double>();
    for (int r = 0; r < n_t1; ++r) {
      char name[64];
      std::snprintf(name, sizeof(name), "t1_%s_r%03d.csv", label.c_str(), r);
      write_trace_csv(gen_decay_trace(TraceKind::T1, t1p, t1_delays, noise, mix.next()),
                      out_dir + "/" + name);
      entry["t1_files"].push_back(name);
      files.push_back(name);
    }
    DecayTraceParams rp;
    rp.T_us = q.at("T2_star_us").get<double>();
    rp.f_detune_MHz = q.value("f_ramsey_MHz", 0.25);
    for (int r = 0; r < n_ramsey; ++r) {
      char name[64];
      std::snprintf(name, sizeof(name), "ramsey_%s_r%03d.csv", label.c_str(), r);
      write_trace_csv(
          gen_decay_trace(TraceKind::Ramsey, rp, ramsey_delays, noise, mix.next()),
          out_dir + "/" + name);
      entry["ramsey_files"].push_back(name);
      files.push_back(name);
    }
    DecayTraceParams ep;
    ep.T_us = q.at("T2_echo_us").get<double>();
    for (int r = 0; r < n_echo; ++r) {
      char np[64], nm[64];
      std::snprintf(np, sizeof(np), "echo_plus_%s_r%03d.csv", label.c_str(), r);
      std::snprintf(nm, sizeof(nm), "echo_minus_%s_r%03d.csv", label.c_str(), r);
      auto [plus, minus] = gen_echo_pair(ep, echo_delays, noise, mix.next());
      write_trace_csv(plus, out_dir + "/" + np);
      write_trace_csv(minus, out_dir + "/" + nm);
      entry["echo_files"].push_back({{"plus", np}, {"minus", nm}});
      files.push_back(np);
      files.push_back(nm);
    }
    index["qubits"].push_back(entry);
    ++qi;
  }
  write_json_file(index, out_dir + "/index.json");
  files.push_back("index.json");
  return files;
}

NoiseChannelSpec noise_from_json(const json& cfg) {
  NoiseChannelSpec spec;
  if (cfg.contains("eps"))
    for (const auto& [key, value] : cfg.at("eps").items())
      spec.eps.emplace_back(subset_from_bitstring(key), value.get<double>());
  std::sort(spec.eps.begin(), spec.eps.end());
  spec.leak_up_per_gate = cfg.value("leak_up_per_gate", 0.0);
  spec.leak_down_per_gate = cfg.value("leak_down_per_gate", 0.0);
  return spec;
}

std::vector<std::string> synth_rb(const json& cfg, const std::string& out_dir,
                                  std::uint64_t seed, int jobs) {
  RBConfig rc;
  rc.n_qubits = cfg.at("n_qubits").get<int>();
  rc.lengths = cfg.at("lengths").get<std::vector<int>>();
  rc.seeds = cfg.at("seeds").get<int>();
  rc.shots = cfg.at("shots").get<int>();
  if (cfg.contains("noise")) rc.noise = noise_from_json(cfg.at("noise"));
  if (cfg.contains("readout_error")) {
    if (cfg.at("readout_error").is_array())
      rc.readout_error = cfg.at("readout_error").get<std::vector<double>>();
    else
      rc.readout_error = {cfg.at("readout_error").get<double>()};
  }
  rc.master_seed = seed;
  rc.jobs = jobs;
  RBDataset ds = simulate_rb(rc);
  ds.generator_json = cfg.dump();
  save_rb_dataset(ds, out_dir + "/rb_dataset.json");
  return {"rb_dataset.json"};
}

std::vector<std::string> synth_iq(const json& cfg, const std::string& out_dir,
                                  std::uint64_t seed) {
  const double sep = cfg.at("separation_sigma").get<double>();
  const int shots = cfg.at("shots").get<int>();
  const double p_e = cfg.value("excited_prob", 0.5);
  const auto data = gen_iq_shots(sep, shots, p_e, seed);
  std::ofstream out(out_dir + "/iq_shots.csv");
  if (!out) throw ConfigError(out_dir + "/iq_shots.csv: cannot open for writing");
  out << "i,q,prepared_excited,assigned_excited\n";
  for (const auto& s : data)
    out << fmt(s.i) << "," << fmt(s.q) << "," << (s.prepared_excited ? 1 : 0)
        << "," << (s.assigned_excited ? 1 : 0) << "\n";
  json index;
  index["report_kind"] = "iq_set";
  index["file"] = "iq_shots.csv";
  index["truth"] = {{"separation_sigma", sep}, {"excited_prob", p_e}, {"shots", shots}};
  write_json_file(index, out_dir + "/index.json");
  return {"iq_shots.csv", "index.json"};
}

// Rabi-rate crosstalk traces: for each (qubit i, drive line j) a voltage
// sweep whose induced rate is lambda_j eps_q[i][j] V. Voltage ranges adapt
// per pair so every sweep reaches target_rabi_MHz at its top point.
std::vector<std::string> synth_crosstalk_rabi(const json& cfg,
                                              const std::string& out_dir,
                                              const std::string& config_dir,
                                              std::uint64_t seed, int jobs) {
  const DeviceParams dev = device_from_config(cfg, config_dir);
  const int n = dev.n();
  const int n_volt = cfg.value("n_voltages", 8);
  const double target_MHz = cfg.value("target_rabi_MHz", 2.0);
  const json& tj = cfg.value("trace", json::object());
  const int points = tj.value("points", 512);
  const double span_us = tj.value("span_us", 20.0);
  const double decay_T_us = tj.value("decay_T_us", 50.0);
  const double noise = tj.value("noise_sigma", 0.02);
  const auto delays = linspace(0.0, span_us, points);

  save_device(dev, out_dir + "/device.json");
  std::vector<std::string> files{"device.json"};

  struct Task {
    int i, j, v;
    double voltage, f_MHz;
    std::string file;
  };
  std::vector<Task> tasks;
  json index;
  index["report_kind"] = "crosstalk_rabi";
  index["device"] = "device.json";
  index["truth_eps_q"] = dev.eps_q;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double slope = dev.lambda_q[j] * dev.eps_q[i][j];  // rad/s per V
      if (!(slope > 0)) throw ConfigError("crosstalk-rabi: eps_q entries must be positive");
      const double v_max = kTwoPi * target_MHz * 1e6 / slope;
      json entry;
      entry["i"] = i;
      entry["j"] = j;
      for (int v = 0; v < n_volt; ++v) {
        const double voltage = v_max * (v + 1) / n_volt;
        char name[64];
        std::snprintf(name, sizeof(name), "rabi_i%d_j%d_v%02d.csv", i, j, v);
        tasks.push_back({i, j, v, voltage, slope * voltage / kTwoPi / 1e6, name});
        entry["points"].push_back({{"drive", voltage}, {"file", name}});
        files.emplace_back(name);
      }
      index["entries"].push_back(entry);
    }

  parallel_for(tasks.size(), jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    DecayTraceParams p;
    p.T_us = decay_T_us;
    p.f_detune_MHz = task.f_MHz;
    auto trace = gen_decay_trace(
        TraceKind::Rabi, p, delays, noise,
        Rng::derive(seed, {0xC405u, static_cast<std::uint64_t>(task.i),
                           static_cast<std::uint64_t>(task.j),
                           static_cast<std::uint64_t>(task.v)})
            .next());
    write_trace_csv(trace, out_dir + "/" + task.file);
  });

  write_json_file(index, out_dir + "/index.json");
  files.push_back("index.json");
  return files;
}

// AC-Stark crosstalk traces: Ramsey frequency vs drive power through line j,
// shifted by 2 chi_ii n_i with n_i from the steady-state Lorentzian.
std::vector<std::string> synth_crosstalk_stark(const json& cfg,
                                               const std::string& out_dir,
                                               const std::string& config_dir,
                                               std::uint64_t seed, int jobs) {
  const DeviceParams dev = device_from_config(cfg, config_dir);
  const int n = dev.n();
  const int n_pow = cfg.value("n_powers", 8);
  const double delta_d_MHz = cfg.value("delta_d_MHz", 5.0);
  const double f_base_MHz = cfg.value("f_base_MHz", 0.25);
  const double target_stark_kHz = cfg.value("target_stark_kHz", 100.0);
  const double freq_resolution_kHz = cfg.value("freq_resolution_kHz", 1.0);
  const json& tj = cfg.value("trace", json::object());
  const int points = tj.value("points", 1024);
  const double span_us = tj.value("span_us", 20.0);
  const double decay_T_us = tj.value("decay_T_us", 60.0);
  const double noise = tj.value("noise_sigma", 0.02);
  const auto delays = linspace(0.0, span_us, points);

  save_device(dev, out_dir + "/device.json");
  std::vector<std::string> files{"device.json"};

  const double delta_d_rad = kTwoPi * delta_d_MHz * 1e6;

  struct Task {
    int i, j, p;
    double power, f_MHz;
    std::string file;
  };
  std::vector<Task> tasks;
  json index;
  index["report_kind"] = "crosstalk_stark";
  index["device"] = "device.json";
  index["delta_d_MHz"] = delta_d_MHz;
  index["freq_resolution_kHz"] = freq_resolution_kHz;
  index["truth_eps_r"] = dev.eps_r;
  for (int i = 0; i < n; ++i) {
    const double chi_rad = kTwoPi * dev.pairs[i].chi_kHz * 1e3;
    const double kappa_rad = kTwoPi * dev.resonators[i].kappa_total_kHz() * 1e3;
    for (int j = 0; j < n; ++j) {
      const double couple = dev.lambda_r[j] * dev.eps_r[i][j];  // rad/s per V
      if (!(couple > 0)) throw ConfigError("crosstalk-stark: eps_r entries must be positive");
      // Power that produces the target shift on this pair.
      const double target_rad = kTwoPi * target_stark_kHz * 1e3;
      const double denom = (kappa_rad / 2) * (kappa_rad / 2) + delta_d_rad * delta_d_rad;
      const double p_max = target_rad * denom /
                           (2.0 * std::fabs(chi_rad) * couple * couple *
                            kGeneratorImpedanceOhm);
      json entry;
      entry["i"] = i;
      entry["j"] = j;
      for (int p = 0; p < n_pow; ++p) {
        const double power = p_max * (p + 1) / n_pow;
        const double drive = couple * std::sqrt(kGeneratorImpedanceOhm * power);
        const double n_bar = steady_state_photons(drive, kappa_rad, delta_d_rad);
        const double shift_rad = ac_stark_shift(chi_rad, n_bar);
        char name[64];
        std::snprintf(name, sizeof(name), "stark_i%d_j%d_p%02d.csv", i, j, p);
        tasks.push_back({i, j, p, power, f_base_MHz + shift_rad / kTwoPi / 1e6, name});
        entry["points"].push_back({{"drive", power}, {"file", name}});
        files.emplace_back(name);
      }
      index["entries"].push_back(entry);
    }
  }

  parallel_for(tasks.size(), jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    if (!(task.f_MHz > 0))
      throw ConfigError("crosstalk-stark: Stark shift exceeds the base detuning");
    DecayTraceParams p;
    p.T_us = decay_T_us;
    p.f_detune_MHz = task.f_MHz;
    auto trace = gen_decay_trace(
        TraceKind::Ramsey, p, delays, noise,
        Rng::derive(seed, {0x57A4u, static_cast<std::uint64_t>(task.i),
                           static_cast<std::uint64_t>(task.j),
                           static_cast<std::uint64_t>(task.p)})
            .next());
    write_trace_csv(trace, out_dir + "/" + task.file);
  });

  write_json_file(index, out_dir + "/index.json");
  files.push_back("index.json");
  return files;
}

// ---------------------------------------------------------------------------
// analyze kinds
// ---------------------------------------------------------------------------

struct Aggregate {
  double mean = 0.0, sd = 0.0;
  int n = 0;
};

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  a.n = static_cast<int>(values.size());
  if (a.n == 0) return a;
  for (double v : values) a.mean += v;
  a.mean /= a.n;
  if (a.n > 1) {
    for (double v : values) a.sd += (v - a.mean) * (v - a.mean);
    a.sd = std::sqrt(a.sd / (a.n - 1));
  }
  return a;
}

json aggregate_json(const Aggregate& a) {
  return {{"mean", a.mean}, {"sd", a.sd}, {"n", a.n}};
}

void analyze_coherence(const std::string& in_dir, const std::string& out_dir,
                       const RunOptions& opts) {
  const json index = read_json_file(in_dir + "/index.json");
  if (index.value("report_kind", "") != "coherence_suite")
    throw ConfigError(in_dir + ": not a coherence suite (run synth coherence-suite first)");

  json report;
  report["report_kind"] = "coherence";
  report["tau_g_ns"] = opts.tau_g_ns;
  for (const auto& q : index.at("qubits")) {
    const std::string label = q.at("label").get<std::string>();
    std::vector<double> t1s, t2stars, t2es;
    for (const auto& f : q.value("t1_files", json::array())) {
      auto trace = read_trace_csv(in_dir + "/" + f.get<std::string>());
      auto fit = fit_exp_decay(trace);
      if (!fit.converged) throw DomainError("coherence: T1 fit failed on " + f.get<std::string>());
      t1s.push_back(fit.value("T_us"));
    }
    for (const auto& f : q.value("ramsey_files", json::array())) {
      auto trace = read_trace_csv(in_dir + "/" + f.get<std::string>());
      auto fit = fit_ramsey(trace);
      if (!fit.converged) throw DomainError("coherence: Ramsey fit failed on " + f.get<std::string>());
      t2stars.push_back(fit.value("T_us"));
    }
    for (const auto& pair : q.value("echo_files", json::array())) {
      auto plus = read_trace_csv(in_dir + "/" + pair.at("plus").get<std::string>());
      auto minus = read_trace_csv(in_dir + "/" + pair.at("minus").get<std::string>());
      auto fit = fit_echo_pair(plus, minus);
      if (!fit.converged) throw DomainError("coherence: echo fit failed for " + label);
      t2es.push_back(fit.value("T2e_us"));
    }
    const Aggregate t1 = aggregate(t1s), t2s = aggregate(t2stars), t2e = aggregate(t2es);
    json row;
    row["label"] = label;
    row["T1_us"] = aggregate_json(t1);
    row["T2_star_us"] = aggregate_json(t2s);
    row["T2_echo_us"] = aggregate_json(t2e);
    if (t1.n > 0 && t2e.n > 0) {
      const double tphi = pure_dephasing_time_us(t1.mean, t2e.mean);
      // First-order propagation through 1/T_phi = 1/T2e - 1/(2 T1).
      const double d_t2e = tphi * tphi / (t2e.mean * t2e.mean);
      const double d_t1 = tphi * tphi / (2.0 * t1.mean * t1.mean);
      const double err = std::hypot(d_t2e * t2e.sd, d_t1 * t1.sd);
      row["T_phi_e_us"] = {{"value", tphi}, {"err", err}};
      const double epg = coherence_limited_epg(t1.mean, t2e.mean, opts.tau_g_ns);
      const double tau_us = opts.tau_g_ns * 1e-3;
      const double e1 = tau_us / (6.0 * t1.mean * t1.mean) * std::exp(-tau_us / t1.mean);
      const double e2 = tau_us / (3.0 * t2e.mean * t2e.mean) * std::exp(-tau_us / t2e.mean);
      row["epg_coherence_limit"] = {{"value", epg},
                                    {"err", std::hypot(e1 * t1.sd, e2 * t2e.sd)}};
    }
    report["rows"].push_back(row);
  }
  write_json_file(report, out_dir + "/coherence_report.json");
}

void write_curve_csv(const std::string& path, const std::string& ycol,
                     const DecayCurve& curve) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path + ": cannot open for writing");
  out << "m," << ycol << ",stderr\n";
  for (std::size_t i = 0; i < curve.lengths.size(); ++i)
    out << curve.lengths[i] << "," << fmt(curve.mean[i]) << ","
        << fmt(curve.stderr_mean[i]) << "\n";
}

void analyze_rb(const std::string& input, const std::string& out_dir,
                const RunOptions& opts) {
  const RBDataset ds = load_rb_dataset(input);
  json report;
  report["report_kind"] = "rb";
  report["gates_per_clifford"] = ds.gates_per_clifford;
  report["lengths"] = ds.lengths;
  for (int q = 0; q < ds.n_qubits; ++q) {
    const auto curve = survival_probability(ds, q);
    auto fit = fit_rb_curve(curve.lengths, curve.mean, curve.stderr_mean);
    if (!fit.converged) throw DomainError("rb: survival fit failed for qubit " + std::to_string(q));
    const double alpha = fit.value("alpha");
    const double epc = (1.0 - alpha) / 2.0;
    json row;
    row["qubit"] = q;
    row["alpha"] = alpha;
    row["alpha_err"] = fit.error("alpha");
    row["A"] = fit.value("A");
    row["B"] = fit.value("B");
    row["epc"] = epc;
    row["epg"] = fit.at_boundary ? 0.0 : epg_from_alpha(alpha, ds.gates_per_clifford);
    row["epg_err"] = fit.error("alpha") / 2.0 / ds.gates_per_clifford;
    row["at_boundary"] = fit.at_boundary;
    report["qubits"].push_back(row);
    char name[64];
    std::snprintf(name, sizeof(name), "survival_q%d.csv", q);
    write_curve_csv(out_dir + "/" + name, "survival", curve);
  }
  (void)opts;
  write_json_file(report, out_dir + "/rb_report.json");
}

void analyze_corr_rb(const std::string& input, const std::string& out_dir,
                     const RunOptions& opts) {
  const RBDataset ds = load_rb_dataset(input);
  const auto res = analyze_correlated_rb(ds, opts.bootstrap, opts.seed,
                                         opts.jobs > 0 ? opts.jobs : 0);
  const std::size_t size = res.alpha.values.size();

  json report;
  report["report_kind"] = "corr_rb";
  report["n_qubits"] = ds.n_qubits;
  report["gates_per_clifford"] = res.gates_per_clifford;
  for (std::size_t mask = 1; mask < size; ++mask) {
    json row;
    row["subspace"] = subset_to_bitstring(static_cast<std::uint32_t>(mask), ds.n_qubits);
    row["alpha"] = res.alpha.values[mask];
    if (!res.alpha.errors.empty()) row["alpha_err"] = res.alpha.errors[mask];
    report["alpha_table"].push_back(row);
  }
  for (std::size_t mask = 0; mask < size; ++mask) {
    json row;
    row["subspace"] = subset_to_bitstring(static_cast<std::uint32_t>(mask), ds.n_qubits);
    row["p"] = res.pauli_p.values[mask];
    if (!res.pauli_p.errors.empty()) row["p_err"] = res.pauli_p.errors[mask];
    row["eps"] = res.depol_eps.values[mask];
    if (!res.depol_eps.errors.empty()) row["eps_err"] = res.depol_eps.errors[mask];
    report["weights"].push_back(row);
  }
  report["eta_tilde"] = res.eta.value;
  report["eta_tilde_err"] = res.eta_err;
  report["eta_multi_qubit_mass"] = res.eta.multi_qubit_mass;
  report["eta_singles_adjustment"] = res.eta.singles_adjustment;
  report["pauli_sum"] = res.pauli_sum;
  report["epg_per_qubit"] = res.epg;
  write_json_file(report, out_dir + "/corr_rb_report.json");

  // Correlator curves for plotting.
  std::ofstream out(out_dir + "/correlators.csv");
  if (!out) throw ConfigError(out_dir + "/correlators.csv: cannot open for writing");
  out << "subspace,m,mean,stderr\n";
  for (std::size_t mask = 1; mask < size; ++mask) {
    const auto curve = z_correlators(ds, static_cast<std::uint32_t>(mask));
    const std::string name = subset_to_bitstring(static_cast<std::uint32_t>(mask), ds.n_qubits);
    for (std::size_t i = 0; i < curve.lengths.size(); ++i)
      out << name << "," << curve.lengths[i] << "," << fmt(curve.mean[i]) << ","
          << fmt(curve.stderr_mean[i]) << "\n";
  }
}

void analyze_leakage_dataset(const std::string& input, const std::string& out_dir,
                             const RunOptions& opts) {
  (void)opts;
  const RBDataset ds = load_rb_dataset(input);
  const auto res = dkit::analyze_leakage_rb(ds, 0);
  json report;
  report["report_kind"] = "leakage_rb";
  report["gates_per_clifford"] = ds.gates_per_clifford;
  auto fit_json = [](const LeakageRBFit& f) {
    return json{{"L_inf", f.L_inf},
                {"lambda_L", f.lambda_L},
                {"lpg", f.lpg},
                {"lpg_err", f.lpg_err},
                {"alpha", f.alpha},
                {"alpha_err", f.alpha_err},
                {"epg", f.epg},
                {"epg_err", f.epg_err},
                {"converged", f.converged},
                {"mode_warning", f.mode_warning}};
  };
  report["three_param"] = fit_json(res.three_param);
  report["four_param"] = fit_json(res.four_param);
  write_json_file(report, out_dir + "/leakage_report.json");
  write_curve_csv(out_dir + "/leak_population.csv", "leak_population", res.leak_curve);
  write_curve_csv(out_dir + "/leak_survival.csv", "survival", res.survival_curve);
}

void analyze_crosstalk(const std::string& in_dir, const std::string& out_dir,
                       const RunOptions& opts) {
  const json index = read_json_file(in_dir + "/index.json");
  const std::string kind = index.value("report_kind", "");
  if (kind != "crosstalk_rabi" && kind != "crosstalk_stark")
    throw ConfigError(in_dir + ": not a crosstalk dataset");
  const DeviceParams dev = load_device(in_dir + "/" + index.at("device").get<std::string>());
  const int n = dev.n();

  Matrix slopes(n, std::vector<double>(n, 0.0));
  Matrix slope_errs(n, std::vector<double>(n, 0.0));
  std::vector<std::uint8_t> floored(static_cast<std::size_t>(n) * n, 0);

  const auto& entries = index.at("entries");
  std::vector<json> entry_list(entries.begin(), entries.end());
  parallel_for(entry_list.size(), opts.jobs, [&](std::size_t e) {
    const json& entry = entry_list[e];
    const int i = entry.at("i").get<int>();
    const int j = entry.at("j").get<int>();
    std::vector<DrivePoint> points;
    for (const auto& pt : entry.at("points")) {
      DrivePoint dp;
      dp.drive = pt.at("drive").get<double>();
      dp.trace = read_trace_csv(in_dir + "/" + pt.at("file").get<std::string>());
      points.push_back(std::move(dp));
    }
    const auto est = kind == "crosstalk_rabi"
                         ? rabi_rate_slope(points, opts.sigma_ratio)
                         : stark_shift_slope(points, opts.sigma_ratio);
    slopes[i][j] = est.k;
    slope_errs[i][j] = est.k_err;
    floored[static_cast<std::size_t>(i) * n + j] = est.consistent_with_zero ? 1 : 0;
  });

  json report;
  report["report_kind"] = "crosstalk";
  report["selectivity_kind"] = kind == "crosstalk_rabi" ? "qubit" : "resonator";
  report["slopes"] = slopes;
  report["slope_errs"] = slope_errs;

  SelectivityMatrix sel;
  if (kind == "crosstalk_rabi") {
    sel = qubit_selectivity(slopes);
    std::vector<double> omega_q;
    for (const auto& q : dev.qubits) omega_q.push_back(q.omega_q_GHz);
    report["j_bound_kHz"] = bound_parasitic_J_kHz(sel, omega_q);
  } else {
    std::vector<double> chi, kappa;
    for (const auto& p : dev.pairs) chi.push_back(p.chi_kHz);
    for (const auto& r : dev.resonators) kappa.push_back(r.kappa_total_kHz());
    sel = resonator_selectivity(slopes, chi, index.value("delta_d_MHz", 0.0), kappa);
    // Null-measurement bound on the parasitic dispersive shifts at
    // n_bar = n_crit / 10.
    const double res_kHz = index.value("freq_resolution_kHz", 1.0);
    json bounds = json::array();
    for (int j = 0; j < n; ++j) {
      const double n_bar = dev.pairs[j].n_crit() / 10.0;
      bounds.push_back({{"resonator", j},
                        {"n_bar", n_bar},
                        {"chi_bound_Hz", bound_parasitic_chi_Hz(res_kHz * 1e3, n_bar)}});
    }
    report["chi_bound"] = bounds;
    report["freq_resolution_kHz"] = res_kHz;
  }
  sel.is_upper_bound = floored;

  Matrix phi(n, std::vector<double>(n)), db(n, std::vector<double>(n));
  Matrix ub(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      phi[i][j] = sel.at(i, j);
      db[i][j] = sel.db(i, j);
      ub[i][j] = sel.is_upper_bound[static_cast<std::size_t>(i) * n + j] ? 1.0 : 0.0;
    }
  report["phi"] = phi;
  report["db"] = db;
  report["is_upper_bound"] = ub;
  report["validity_warning"] = sel.validity_warning;
  write_json_file(report, out_dir + "/crosstalk_report.json");
}

}  // namespace

void run_synth(const std::string& config_path, const std::string& out_dir,
               const RunOptions& opts) {
  const json cfg = read_json_file(config_path);
  fs::create_directories(out_dir);
  const std::string kind = cfg.value("kind", "");
  const std::string config_dir = fs::path(config_path).parent_path().string();

  std::vector<std::string> outputs;
  if (kind == "trace")
    outputs = synth_trace(cfg, out_dir, opts.seed);
  else if (kind == "coherence-suite")
    outputs = synth_coherence_suite(cfg, out_dir, opts.seed);
  else if (kind == "rb")
    outputs = synth_rb(cfg, out_dir, opts.seed, opts.jobs);
  else if (kind == "iq")
    outputs = synth_iq(cfg, out_dir, opts.seed);
  else if (kind == "crosstalk-rabi")
    outputs = synth_crosstalk_rabi(cfg, out_dir, config_dir, opts.seed, opts.jobs);
  else if (kind == "crosstalk-stark")
    outputs = synth_crosstalk_stark(cfg, out_dir, config_dir, opts.seed, opts.jobs);
  else
    throw ConfigError(config_path + ": kind: unknown synth kind '" + kind + "'");

  RunManifest m;
  m.command = "synth";
  m.config_path = config_path;
  m.master_seed = opts.seed;
  m.outputs = outputs;
  std::sort(m.outputs.begin(), m.outputs.end());
  m.toolkit_version = kVersion;
  m.timestamp_utc = utc_timestamp_now();
  write_manifest(m, out_dir);
}

void run_analyze(const std::string& kind, const std::string& input_path,
                 const std::string& out_dir, const RunOptions& opts) {
  fs::create_directories(out_dir);
  if (!fs::exists(input_path))
    throw ConfigError(input_path + ": no such input (empty or missing dataset)");

  if (kind == "coherence")
    analyze_coherence(input_path, out_dir, opts);
  else if (kind == "rb")
    analyze_rb(input_path, out_dir, opts);
  else if (kind == "corr-rb")
    analyze_corr_rb(input_path, out_dir, opts);
  else if (kind == "leakage-rb")
    analyze_leakage_dataset(input_path, out_dir, opts);
  else if (kind == "crosstalk")
    analyze_crosstalk(input_path, out_dir, opts);
  else
    throw ConfigError("analyze: unknown kind '" + kind +
                      "' (expected coherence|crosstalk|rb|corr-rb|leakage-rb)");

  RunManifest m;
  m.command = "analyze " + kind;
  m.config_path = "";
  m.master_seed = opts.seed;
  m.inputs = {input_path};
  for (const auto& f : fs::directory_iterator(out_dir))
    if (f.path().filename() != "manifest.json")
      m.outputs.push_back(f.path().filename().string());
  std::sort(m.outputs.begin(), m.outputs.end());
  m.toolkit_version = kVersion;
  m.timestamp_utc = utc_timestamp_now();
  write_manifest(m, out_dir);
}

void run_predict_band(const std::string& config_path, const std::string& out_dir,
                      const RunOptions& opts) {
  (void)opts;
  const LatticeSpec spec = load_lattice_spec(config_path);
  fs::create_directories(out_dir);
  const BandPrediction pred = predict_band(spec);

  json report;
  report["report_kind"] = "band";
  report["eps_eff"] = pred.eps_eff;
  report["omega_p_GHz"] = pred.omega_p_GHz;
  report["curvature_GHz_mm2"] = pred.curvature_GHz_mm2;
  report["delta_p_mm"] = pred.delta_p_mm;
  report["asymptotic_db_per_2mm"] = pred.asymptotic_db_per_2mm;
  if (spec.reference_cutoff_GHz) {
    report["reference_cutoff_GHz"] = *spec.reference_cutoff_GHz;
    report["cutoff_ratio_model_over_reference"] =
        pred.omega_p_GHz / *spec.reference_cutoff_GHz;
    report["delta_p_at_reference_cutoff_mm"] =
        skin_depth_mm(pred.eps_eff, *spec.reference_cutoff_GHz, 0.0);
  }
  if (spec.reference_curvature_GHz_mm2) {
    report["reference_curvature_GHz_mm2"] = *spec.reference_curvature_GHz_mm2;
    report["curvature_ratio_model_over_reference"] =
        pred.curvature_GHz_mm2 / *spec.reference_curvature_GHz_mm2;
  }
  if (spec.reference_band_top_GHz) {
    // Linear no-pillar band evaluated at the zone-corner wavenumber
    // k_M = sqrt(2) pi / a; reported for comparison, not asserted.
    const double k_m = std::sqrt(2.0) * kPi / spec.a_mm;
    const double f_m = dispersion(spec, {k_m})[0].f_free_GHz;
    report["reference_band_top_GHz"] = *spec.reference_band_top_GHz;
    report["free_band_at_M_GHz"] = f_m;
  }
  write_json_file(report, out_dir + "/band_prediction.json");

  {
    const double k_m = std::sqrt(2.0) * kPi / spec.a_mm;
    std::vector<double> ks;
    for (int i = 0; i <= 200; ++i) ks.push_back(k_m * i / 200.0);
    const auto disp = dispersion(spec, ks);
    std::ofstream out(out_dir + "/dispersion.csv");
    out << "k_rad_per_mm,f_pillar_GHz,f_free_GHz\n";
    for (const auto& p : disp)
      out << fmt(p.k_rad_per_mm) << "," << fmt(p.f_pillar_GHz) << ","
          << fmt(p.f_free_GHz) << "\n";
  }
  {
    std::ofstream out(out_dir + "/coupling_profile.csv");
    out << "d_mm,relative_amplitude,db,near_field\n";
    for (int i = 1; i <= 240; ++i) {
      const double d = 0.05 * i;
      const auto c = coupling_profile(d, spec.a_mm, pred.delta_p_mm);
      out << fmt(d) << "," << fmt(c.relative_amplitude) << "," << fmt(c.db) << ","
          << (c.near_field ? 1 : 0) << "\n";
    }
  }
  {
    const auto map = coupling_map_db(10, spec.a_mm, pred.delta_p_mm);
    std::ofstream out(out_dir + "/coupling_map.csv");
    for (std::size_t r = 0; r < map.size(); ++r) {
      for (std::size_t c = 0; c < map[r].size(); ++c)
        out << (c ? "," : "") << fmt(map[r][c]);
      out << "\n";
    }
  }

  RunManifest m;
  m.command = "predict-band";
  m.config_path = config_path;
  m.outputs = {"band_prediction.json", "dispersion.csv", "coupling_profile.csv",
               "coupling_map.csv"};
  m.toolkit_version = kVersion;
  m.timestamp_utc = utc_timestamp_now();
  write_manifest(m, out_dir);
}

void run_report(const std::string& in_dir, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::vector<std::string> outputs;
  std::vector<fs::path> files;
  for (const auto& f : fs::directory_iterator(in_dir))
    if (f.path().extension() == ".json") files.push_back(f.path());
  std::sort(files.begin(), files.end());

  bool rendered = false;
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    if (name == "device.json") {
      const auto dev = load_device(path.string());
      const std::string text = render_device_tables(dev);
      write_text_file(text, out_dir + "/device_tables.txt");
      std::printf("%s", text.c_str());
      outputs.push_back("device_tables.txt");
      rendered = true;
      continue;
    }
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
      j = json::parse(ss.str());
    } catch (const json::parse_error&) {
      continue;
    }
    if (!j.contains("report_kind")) continue;
    const std::string text = render_report_text(ss.str());
    if (text.empty()) continue;
    const std::string out_name = path.stem().string() + ".txt";
    write_text_file(text, out_dir + "/" + out_name);
    std::printf("%s", text.c_str());
    outputs.push_back(out_name);
    rendered = true;
  }
  if (!rendered)
    throw ConfigError(in_dir + ": no report JSON files found to render");

  RunManifest m;
  m.command = "report";
  m.inputs = {in_dir};
  m.outputs = outputs;
  std::sort(m.outputs.begin(), m.outputs.end());
  m.toolkit_version = kVersion;
  m.timestamp_utc = utc_timestamp_now();
  write_manifest(m, out_dir);
}

}  // namespace dkit
