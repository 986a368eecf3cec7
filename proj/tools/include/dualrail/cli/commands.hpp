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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dualrail::cli {

inline constexpr std::string_view kReportSchema = "dualrail.report/1";

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumericHealth = 3;

inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr std::size_t kDefaultShots = 1000;
inline constexpr double kDefaultTolerance = 1e-9;

/// Command-line overrides; unset values fall back to [options], then defaults.
struct CommandFlags {
    std::optional<std::size_t> cutoff;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> shots;
    std::optional<double> tolerance;
    bool allow_midcircuit = false;
};

struct CommandResult {
    int exit_code = kExitOk;
    /// JSON report, newline terminated.
    std::string report;
};

/**
 * Runs `compile`, `run`, or `verify` on circuit text. `verify` without a
 * document runs the built-in identity suite. Never throws for bad input;
 * failures are reported through the exit code and the report's "error".
 */
CommandResult run_command(std::string_view command, const std::optional<std::string> &document_text,
                          const CommandFlags &flags);

} // namespace dualrail::cli
