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
#include <vector>

namespace dkit {

// Provenance record written as manifest.json next to every output set.
// Rerunning the same command/config/seed reproduces the data files
// byte-for-byte; the manifest itself carries the wall-clock timestamp and is
// the one file excluded from that guarantee.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::uint64_t master_seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string toolkit_version;
  std::string timestamp_utc;
};

void write_manifest(const RunManifest& m, const std::string& out_dir);
RunManifest load_manifest(const std::string& path);

std::string utc_timestamp_now();

}  // namespace dkit
