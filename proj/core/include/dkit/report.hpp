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

#include "dkit/device.hpp"

namespace dkit {

// Renders a report JSON document (dispatch on its "report_kind" field) as an
// aligned text table. Every number in the rendering is read back from the
// JSON; nothing is print-only.
std::string render_report_text(const std::string& report_json_text);

// Device parameter and consistency tables: per-pair dispersive shift from
// the coupling model next to the recorded value (with the relative
// discrepancy), critical photon numbers, and the coherence-derived columns
// when lifetimes are present.
std::string render_device_tables(const DeviceParams& dev, double tau_g_ns = 24.0);

}  // namespace dkit
