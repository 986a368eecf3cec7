// Copyright 2026 The dualrail Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace dualrail {

/// Classifies every failure the library raises so callers (and the CLI exit
/// code mapping) can branch without parsing messages.
enum class ErrorCode {
    kInvalidLayout,      // duplicate id, bad dimension
    kUnknownSubsystem,   // id not present in the layout
    kWrongSubsystemKind, // e.g. a mode where a qubit is required
    kNotUnitary,
    kNotHermitian,
    kLayoutMismatch,
    kCorruptState,       // projection norms vanish, zero-norm jump
    kInvalidArgument,
    kInvalidRegister,
    kAncillaUnavailable, // borrowed ancilla not in its reference state
    kResourceExhausted,
    kUnsupportedGate,
    kDimensionBudget,
    kNumericHealth,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) { throw Error(code, message); }

} // namespace dualrail
