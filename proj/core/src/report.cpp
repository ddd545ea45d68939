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

#include "dkit/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dkit/dispersive.hpp"
#include "dkit/errors.hpp"

namespace dkit {

using nlohmann::json;

namespace {

std::string num(double v, const char* spec = "%.4g") {
  char buf[48];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// Simple fixed-width table builder.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) width[c] = header_[c].size();
    for (const auto& row : rows_)
      for (std::size_t c = 0; c < row.size(); ++c)
        width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        os << (c ? "  " : "");
        os << row[c];
        os << std::string(width[c] - row[c].size(), ' ');
      }
      os << "\n";
    };
    emit(header_);
    std::size_t total = 0;
    for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c ? 2 : 0);
    os << std::string(total, '-') << "\n";
    for (const auto& row : rows_) emit(row);
    return os.str();
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string with_err(const json& j, const char* value_key, const char* err_key) {
  if (j.contains(err_key))
    return num(j.at(value_key).get<double>(), "%.6g") + " +- " +
           num(j.at(err_key).get<double>(), "%.2g");
  return num(j.at(value_key).get<double>(), "%.6g");
}

std::string render_coherence(const json& j) {
  Table t({"qubit", "T1 (us)", "T2* (us)", "T2e (us)", "Tphi,e (us)", "EPG coh lim"});
  for (const auto& row : j.at("rows")) {
    auto agg = [&](const char* key) {
      const json& a = row.at(key);
      return num(a.at("mean").get<double>(), "%.4g") + "(" +
             num(a.at("sd").get<double>(), "%.2g") + ")";
    };
    std::string tphi = "-", epg = "-";
    if (row.contains("T_phi_e_us"))
      tphi = num(row.at("T_phi_e_us").at("value").get<double>(), "%.4g") + "(" +
             num(row.at("T_phi_e_us").at("err").get<double>(), "%.2g") + ")";
    if (row.contains("epg_coherence_limit"))
      epg = num(row.at("epg_coherence_limit").at("value").get<double>(), "%.3g") +
            "(" + num(row.at("epg_coherence_limit").at("err").get<double>(), "%.2g") + ")";
    t.add_row({row.at("label").get<std::string>(), agg("T1_us"), agg("T2_star_us"),
               agg("T2_echo_us"), tphi, epg});
  }
  return "Coherence summary (gate period " +
         num(j.value("tau_g_ns", 0.0), "%.3g") + " ns)\n\n" + t.render();
}

std::string render_rb(const json& j) {
  Table t({"qubit", "alpha", "EPC", "EPG"});
  for (const auto& row : j.at("qubits")) {
    t.add_row({std::to_string(row.at("qubit").get<int>()),
               with_err(row, "alpha", "alpha_err"),
               num(row.at("epc").get<double>(), "%.3g"),
               with_err(row, "epg", "epg_err")});
  }
  return "Randomized benchmarking (gates/Clifford = " +
         num(j.at("gates_per_clifford").get<double>(), "%.6g") + ")\n\n" + t.render();
}

std::string render_corr_rb(const json& j) {
  std::ostringstream os;
  os << "Correlated RB\n\n";
  Table ta({"subspace S", "alpha_S"});
  for (const auto& row : j.at("alpha_table"))
    ta.add_row({row.at("subspace").get<std::string>(),
                with_err(row, "alpha", "alpha_err")});
  os << ta.render() << "\n";
  Table tw({"subspace S", "p_S", "eps_S"});
  for (const auto& row : j.at("weights"))
    tw.add_row({row.at("subspace").get<std::string>(),
                with_err(row, "p", "p_err"), with_err(row, "eps", "eps_err")});
  os << tw.render() << "\n";
  os << "sum p_S        = " << num(j.at("pauli_sum").get<double>(), "%.8g") << "\n";
  os << "eta~ (crosstalk metric) = " << num(j.at("eta_tilde").get<double>(), "%.3g");
  if (j.contains("eta_tilde_err") && j.at("eta_tilde_err").get<double>() > 0)
    os << " +- " << num(j.at("eta_tilde_err").get<double>(), "%.2g");
  os << "\n";
  if (j.contains("epg_per_qubit")) {
    os << "EPG per qubit  =";
    for (const auto& v : j.at("epg_per_qubit")) os << " " << num(v.get<double>(), "%.3g");
    os << "  (convention: EPC = (1-alpha)/2, divided by "
       << num(j.at("gates_per_clifford").get<double>(), "%.6g")
       << " physical gates/Clifford)\n";
  }
  return os.str();
}

std::string render_leakage(const json& j) {
  std::ostringstream os;
  os << "Leakage RB\n\n";
  Table t({"model", "LPG", "EPG", "alpha", "warning"});
  for (const char* key : {"three_param", "four_param"}) {
    const json& f = j.at(key);
    t.add_row({key, with_err(f, "lpg", "lpg_err"), with_err(f, "epg", "epg_err"),
               with_err(f, "alpha", "alpha_err"),
               f.value("mode_warning", false) ? "EPG >> LPG violated" : ""});
  }
  os << t.render();
  return os.str();
}

std::string render_crosstalk(const json& j) {
  std::ostringstream os;
  const std::string kind = j.value("selectivity_kind", "qubit");
  os << (kind == "qubit" ? "Qubit" : "Resonator") << " control line selectivity (dB)\n\n";
  const auto db = j.at("db").get<std::vector<std::vector<double>>>();
  const auto ub = j.at("is_upper_bound").get<std::vector<std::vector<double>>>();
  const int n = static_cast<int>(db.size());
  std::vector<std::string> header{"i\\j"};
  for (int c = 0; c < n; ++c) header.push_back("line " + std::to_string(c + 1));
  Table t(header);
  for (int r = 0; r < n; ++r) {
    std::vector<std::string> row{std::to_string(r + 1)};
    for (int c = 0; c < n; ++c) {
      std::string cell = num(db[r][c], "%.1f");
      if (ub[r][c] > 0.5) cell = "< " + cell;
      row.push_back(cell);
    }
    t.add_row(row);
  }
  os << t.render();
  if (j.value("validity_warning", false))
    os << "\nwarning: |Delta_d| >> kappa, |chi| not satisfied; selectivities approximate\n";
  if (j.contains("j_bound_kHz")) {
    os << "\n|J| bounds (kHz), |J_ij| < sqrt(min(phi_ij, phi_ji)) |Delta_ij|\n\n";
    const auto bound = j.at("j_bound_kHz").get<std::vector<std::vector<double>>>();
    double worst = 0.0;
    Table tb(header);
    for (int r = 0; r < n; ++r) {
      std::vector<std::string> row{std::to_string(r + 1)};
      for (int c = 0; c < n; ++c) {
        row.push_back(r == c ? "-" : num(bound[r][c], "%.3g"));
        if (r != c) worst = std::max(worst, bound[r][c]);
      }
      tb.add_row(row);
    }
    os << tb.render();
    os << "\nmax |J|/2pi bound: < " << num(worst, "%.3g") << " kHz\n";
  }
  if (j.contains("chi_bound")) {
    os << "\nParasitic dispersive-shift bounds at n_bar = n_crit/10, resolution "
       << num(j.value("freq_resolution_kHz", 1.0), "%.3g") << " kHz\n\n";
    Table tb({"resonator", "n_bar", "chi bound (Hz)"});
    for (const auto& row : j.at("chi_bound"))
      tb.add_row({std::to_string(row.at("resonator").get<int>() + 1),
                  num(row.at("n_bar").get<double>(), "%.4g"),
                  num(row.at("chi_bound_Hz").get<double>(), "%.3g")});
    os << tb.render();
  }
  return os.str();
}

std::string render_band(const json& j) {
  std::ostringstream os;
  os << "Plasma-model band prediction\n\n";
  Table t({"quantity", "value"});
  t.add_row({"effective permittivity", num(j.at("eps_eff").get<double>(), "%.4g")});
  t.add_row({"plasma cutoff (GHz)", num(j.at("omega_p_GHz").get<double>(), "%.4g")});
  t.add_row({"band curvature (GHz mm^2)",
             num(j.at("curvature_GHz_mm2").get<double>(), "%.4g")});
  t.add_row({"plasma skin depth (mm)", num(j.at("delta_p_mm").get<double>(), "%.4g")});
  t.add_row({"asymptotic drop (dB / 2 mm)",
             num(j.at("asymptotic_db_per_2mm").get<double>(), "%.4g")});
  os << t.render();
  if (j.contains("reference_cutoff_GHz")) {
    os << "\nComparison against recorded finite-element reference values:\n";
    os << "  cutoff: model " << num(j.at("omega_p_GHz").get<double>(), "%.4g")
       << " GHz vs reference " << num(j.at("reference_cutoff_GHz").get<double>(), "%.4g")
       << " GHz (ratio "
       << num(j.at("cutoff_ratio_model_over_reference").get<double>(), "%.3g") << ")\n";
    if (j.contains("delta_p_at_reference_cutoff_mm"))
      os << "  skin depth at reference cutoff: "
         << num(j.at("delta_p_at_reference_cutoff_mm").get<double>(), "%.3g") << " mm\n";
  }
  if (j.contains("reference_curvature_GHz_mm2"))
    os << "  curvature: model " << num(j.at("curvature_GHz_mm2").get<double>(), "%.4g")
       << " vs reference " << num(j.at("reference_curvature_GHz_mm2").get<double>(), "%.4g")
       << " GHz mm^2 (ratio "
       << num(j.at("curvature_ratio_model_over_reference").get<double>(), "%.3g") << ")\n";
  if (j.contains("reference_band_top_GHz"))
    os << "  no-pillar band at the zone corner: linear model "
       << num(j.at("free_band_at_M_GHz").get<double>(), "%.4g") << " GHz vs recorded "
       << num(j.at("reference_band_top_GHz").get<double>(), "%.4g")
       << " GHz (linear model valid near the zone center only; reported, not asserted)\n";
  return os.str();
}

}  // namespace

std::string render_report_text(const std::string& report_json_text) {
  json j;
  try {
    j = json::parse(report_json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
  const std::string kind = j.value("report_kind", "");
  if (kind == "coherence") return render_coherence(j);
  if (kind == "rb") return render_rb(j);
  if (kind == "corr_rb") return render_corr_rb(j);
  if (kind == "leakage_rb") return render_leakage(j);
  if (kind == "crosstalk") return render_crosstalk(j);
  if (kind == "band") return render_band(j);
  return "";
}

std::string render_device_tables(const DeviceParams& dev, double tau_g_ns) {
  std::ostringstream os;
  os << "Device parameters\n\n";
  Table t({"pair", "wq (GHz)", "wr (GHz)", "alpha (MHz)", "EJ/EC", "chi (kHz)",
           "chi model (kHz)", "chi dev", "g (MHz)", "n_crit", "kext (kHz)",
           "ktot (kHz)", "Qint (10^3)", "p_e (%)"});
  for (int i = 0; i < dev.n(); ++i) {
    const auto& q = dev.qubits[i];
    const auto& r = dev.resonators[i];
    const auto& p = dev.pairs[i];
    // The coupling-model shift is reported next to the recorded value; the
    // mismatch between the two is a property of the parameter set itself and
    // is surfaced, not reconciled.
    const double chi_model = chi_from_g_kHz(p.g_MHz, p.delta_GHz, q.E_C_MHz);
    const double dev_frac = (chi_model - p.chi_kHz) / p.chi_kHz;
    t.add_row({"Q" + std::to_string(i + 1) + "/R" + std::to_string(i + 1),
               num(q.omega_q_GHz, "%.4g"), num(r.omega_r_GHz, "%.4g"),
               num(q.alpha_MHz, "%.4g"), num(q.E_J_over_E_C, "%.3g"),
               num(p.chi_kHz, "%.4g"), num(chi_model, "%.4g"),
               num(100.0 * dev_frac, "%+.1f") + "%", num(p.g_MHz, "%.4g"),
               num(std::round(p.n_crit()), "%.0f"), num(r.kappa_ext_kHz, "%.4g"),
               num(r.kappa_total_kHz(), "%.4g"), num(r.Q_int / 1e3, "%.4g"),
               q.p_e_percent ? num(*q.p_e_percent, "%.3g") : "-"});
  }
  os << t.render();

  bool any_coherence = false;
  for (const auto& q : dev.qubits)
    if (q.T1_us && q.T2_echo_us) any_coherence = true;
  if (any_coherence) {
    os << "\nCoherence-derived columns (gate period " << num(tau_g_ns, "%.3g")
       << " ns)\n\n";
    Table tc({"qubit", "T1 (us)", "T2* (us)", "T2e (us)", "Tphi,e (us)", "EPG coh lim"});
    for (int i = 0; i < dev.n(); ++i) {
      const auto& q = dev.qubits[i];
      if (!q.T1_us || !q.T2_echo_us) continue;
      const double tphi = pure_dephasing_time_us(*q.T1_us, *q.T2_echo_us);
      const double epg = coherence_limited_epg(*q.T1_us, *q.T2_echo_us, tau_g_ns);
      tc.add_row({"Q" + std::to_string(i + 1), num(*q.T1_us, "%.4g"),
                  q.T2_star_us ? num(*q.T2_star_us, "%.4g") : "-",
                  num(*q.T2_echo_us, "%.4g"), num(tphi, "%.4g"), num(epg, "%.3g")});
    }
    os << tc.render();
  }
  return os.str();
}

}  // namespace dkit
