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

#include <stdexcept>
#include <string>

namespace dkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration files or serialized inputs. The message carries a
// field path (e.g. "qubits[2].alpha_MHz") so callers can point at the
// offending entry.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Operation preconditions violated (singular detunings, unphysical inputs,
// degenerate data).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace dkit
