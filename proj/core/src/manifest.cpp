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

#include "dkit/manifest.hpp"

#include <ctime>
#include <fstream>

#include <json.hpp>

#include "dkit/errors.hpp"

namespace dkit {

using nlohmann::json;

std::string utc_timestamp_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void write_manifest(const RunManifest& m, const std::string& out_dir) {
  json j;
  j["command"] = m.command;
  j["config"] = m.config_path;
  j["master_seed"] = m.master_seed;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["toolkit_version"] = m.toolkit_version;
  j["timestamp_utc"] = m.timestamp_utc;
  std::ofstream f(out_dir + "/manifest.json");
  if (!f) throw ConfigError(out_dir + "/manifest.json: cannot open for writing");
  f << j.dump(2) << "\n";
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path + ": cannot open manifest");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  RunManifest m;
  m.command = j.value("command", "");
  m.config_path = j.value("config", "");
  m.master_seed = j.value("master_seed", std::uint64_t{0});
  m.inputs = j.value("inputs", std::vector<std::string>{});
  m.outputs = j.value("outputs", std::vector<std::string>{});
  m.toolkit_version = j.value("toolkit_version", "");
  m.timestamp_utc = j.value("timestamp_utc", "");
  return m;
}

}  // namespace dkit
