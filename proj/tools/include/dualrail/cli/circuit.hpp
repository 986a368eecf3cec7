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
#include <vector>

#include "dualrail/compiler.hpp"
#include "dualrail/encoding.hpp"

namespace dualrail::cli {

/**
 * Circuit document, a sectioned key-value text format:
 *
 *   [system]     qubits = q1 a1 / modes = m1 m2 / cutoff = 4
 *   [registers]  <logical id> = <kind> <physical ids...>
 *   [ancillas]   qubits = a1 / com_mode = c
 *   [program]    <gate>[(params)] <operands...> [-> <targets...>]
 *   [options]    seed = 7 / shots = 10000 / tolerance = 1e-9
 *
 * '#' starts a comment. Angles are decimals, optionally written as `pi`,
 * `pi*x`, `pi/x`, or with a leading minus sign.
 */
struct SystemSection {
    std::vector<std::string> qubits;
    std::vector<std::string> modes;
    std::size_t cutoff = kDefaultCutoff;

    bool operator==(const SystemSection &) const = default;
};

struct RegisterRecord {
    std::string id;
    std::string kind;
    std::vector<std::string> physical;
    std::size_t line = 0;

    bool operator==(const RegisterRecord &o) const {
        return id == o.id && kind == o.kind && physical == o.physical;
    }
};

struct AncillaSection {
    std::vector<std::string> qubits;
    std::optional<std::string> com_mode;

    bool operator==(const AncillaSection &) const = default;
};

struct GateRecord {
    std::string name;
    /// Parameter tokens exactly as written.
    std::vector<std::string> params;
    std::vector<std::string> operands;
    /// Operands after "->" (empty without an arrow).
    std::vector<std::string> targets;
    bool arrow = false;
    std::size_t line = 0;

    bool operator==(const GateRecord &o) const {
        return name == o.name && params == o.params && operands == o.operands && targets == o.targets &&
               arrow == o.arrow;
    }
};

struct OptionsSection {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> shots;
    std::optional<double> tolerance;

    bool operator==(const OptionsSection &) const = default;
};

struct CircuitDocument {
    SystemSection system;
    std::vector<RegisterRecord> registers;
    AncillaSection ancillas;
    std::vector<GateRecord> program;
    OptionsSection options;

    bool operator==(const CircuitDocument &) const = default;
};

/// E001 syntax, E002 unknown gate, E003 arity, E004 unknown reference,
/// E005 invalid value.
struct Diagnostic {
    std::string code;
    std::size_t line = 0;
    std::string field;
    std::string message;
};

struct ParseResult {
    std::optional<CircuitDocument> document;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return document.has_value() && diagnostics.empty(); }
};

/// Parses and validates (names, arity, references, values). Collects every
/// diagnostic instead of stopping at the first.
ParseResult parse_circuit(std::string_view text);

std::string serialize(const CircuitDocument &doc);

/// Evaluates an angle token; nullopt if malformed.
std::optional<double> parse_angle(std::string_view token);

struct GateSpec {
    std::string_view name;
    std::size_t params;
    bool arrow;            // controls before "->", targets after
    std::size_t operands;  // exact count when fixed (0 = variable)
    std::size_t targets;   // exact count when fixed (0 = variable)
};
/// Catalogue entry for a gate name (mc[...] resolves to its wrapper); nullopt if unknown.
std::optional<GateSpec> gate_spec(std::string_view name);

struct BuiltCircuit {
    LayoutPtr layout;
    encoding::LogicalRegister reg;
    std::vector<compiler::LogicalGate> gates;
};

/// Builds layout, register, and logical gates. `cutoff` overrides the
/// document's. Throws dualrail::Error on semantic failures.
BuiltCircuit build(const CircuitDocument &doc, std::optional<std::size_t> cutoff = std::nullopt);

/// Ideal logical unitary of the circuit (first register entry = MSB).
Eigen::MatrixXcd ideal_unitary(const std::vector<compiler::LogicalGate> &gates, const encoding::LogicalRegister &reg);

} // namespace dualrail::cli
