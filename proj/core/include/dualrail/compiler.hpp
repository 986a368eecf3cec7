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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dualrail/encoding.hpp"
#include "dualrail/pulse.hpp"
#include "dualrail/state.hpp"

namespace dualrail::compiler {

using pulse::PhysicalOp;
using encoding::LogicalEntry;
using encoding::LogicalRegister;

/// Ops whose |θ| falls below this are dropped.
inline constexpr double kElisionThreshold = 1e-12;

enum class GateKind {
    kSu2Dual,
    kSu2Internal,
    kRzz,
    kCnotHybrid,
    kRxxHybrid,
    kCswap,
    kKcnot,
    kMultiControlled,
    kNativeInternal2q,
};

std::string_view kind_name(GateKind kind);

enum class CnotDirection { kInternalControlsDualRail, kDualRailControlsInternal };

struct LogicalGate {
    GateKind kind = GateKind::kSu2Dual;
    /// Display name (e.g. "h", "cnot"); informational.
    std::string name;
    Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();
    double theta = 0.0;
    std::vector<std::string> controls;
    std::vector<std::string> targets;
    CnotDirection direction = CnotDirection::kInternalControlsDualRail;
    /// multi_controlled only: gate applied under the combined condition. Its
    /// own control operand is supplied by the compiler.
    std::shared_ptr<const LogicalGate> inner;

    static LogicalGate su2(const Eigen::Matrix2cd &u, std::string target, bool dual_rail, std::string name = "u");
    static LogicalGate rzz(double theta, std::string a, std::string b);
    static LogicalGate cnot(std::string control, std::string target, CnotDirection direction);
    static LogicalGate rxx(double theta, std::string internal, std::string dual_rail);
    /// Swaps targets[i] with targets[N + i] for N = targets.size() / 2.
    static LogicalGate cswap(std::string control, std::vector<std::string> targets);
    static LogicalGate kcnot(std::vector<std::string> controls, std::string target);
    static LogicalGate multi_controlled(std::vector<std::string> controls, LogicalGate inner);
    static LogicalGate native_xx(double theta, std::string a, std::string b);
};

/// A labeled range [begin, end) of a lowering's op list.
struct Block {
    std::string label;
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Ops for one gate (or gate fragment) with its ledgered phase: the
/// physical ops act on the codeword span as e^{i·global_phase}·U_logical.
struct Lowering {
    std::vector<PhysicalOp> ops;
    double global_phase = 0.0;
    std::vector<Block> blocks;

    void push(PhysicalOp op);
    void append(const std::vector<PhysicalOp> &more);
    void append(const Lowering &more, bool keep_blocks = true);
    /// Appends `more` and records it as one labeled block.
    void append_block(const std::string &label, const std::vector<PhysicalOp> &more);
    void append_block(const std::string &label, const Lowering &more);
    /// Inverse sequence: reversed order, negated angles, negated phase.
    Lowering inverse() const;
    std::size_t count_blocks(std::string_view label) const;
};

/// U = e^{iα} R_X(θ₁) R_Y(θ₂) R_X(θ₃), R_σ(θ) = exp(−iθσ/2).
struct XyxAngles {
    double alpha = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;
};
XyxAngles decompose_xyx(const Eigen::Matrix2cd &u);

/// R_X(θ) ≡ B(θ/2, π) and R_Y(θ) ≡ B(θ/2, π/2) on (d0, d1), each realized as
/// a ZBS on a |↓⟩ ancilla, or as a bare beamsplitter when none is given.
Lowering dual_rail_rx(double theta, const LogicalEntry &d, const std::optional<std::string> &ancilla);
Lowering dual_rail_ry(double theta, const LogicalEntry &d, const std::optional<std::string> &ancilla);
/// Logical R_X(θ) = carrier(θ, 0) and R_Y(θ) = carrier(θ, π/2) on an internal qubit.
Lowering internal_rx(double theta, const std::string &qubit);
Lowering internal_ry(double theta, const std::string &qubit);

Lowering compile_su2_dual(const Eigen::Matrix2cd &u, const LogicalEntry &d, const std::optional<std::string> &ancilla);
Lowering compile_su2_internal(const Eigen::Matrix2cd &u, const LogicalEntry &q);

/// R_ZZ(θ) on two dual-rail qubits through the parity-phase circuit on
/// (ancilla; d_{1,1}, d_{2,1}).
Lowering compile_rzz(double theta, const LogicalEntry &d1, const LogicalEntry &d2, const std::string &ancilla);

/// CNOT between an internal and a dual-rail logical qubit (either direction,
/// inferred from the operand kinds). Phase e^{iπ/4}.
Lowering compile_cnot_hybrid(const LogicalEntry &control, const LogicalEntry &target,
                             const std::optional<std::string> &ancilla);

/// R_XX(θ) between internal q and dual-rail D; no ancilla.
Lowering compile_rxx_hybrid(double theta, const LogicalEntry &q, const LogicalEntry &d);

/// Controlled swap of first[i] ↔ second[i]; correction qphase(π) iff N odd.
Lowering compile_cswap(const LogicalEntry &q, const std::vector<LogicalEntry> &first,
                       const std::vector<LogicalEntry> &second, const std::optional<std::string> &ancilla);

/// Ĉ₁ = CNOT(x → D) and Ĉ₂ = CNOT(D → x) for exchange qubit x.
struct ExchangeCircuits {
    Lowering c1;
    Lowering c2;
    /// Ĉ₁Ĉ₂ (Ĉ₂ applied first): moves D's state onto x, leaving D in |0⟩.
    Lowering exchange_in() const;
    /// Ĉ₂Ĉ₁: the reverse move.
    Lowering exchange_out() const;
};
ExchangeCircuits compile_exchange(const LogicalEntry &d, const std::string &exchange_qubit,
                                  const std::optional<std::string> &ancilla);

/// Physical resources a multi-qubit lowering may draw on.
struct Resources {
    std::optional<std::string> bs_ancilla;
    std::optional<std::string> exchange_qubit;
    std::optional<std::string> control_qubit;
    std::optional<std::string> com_mode;
};

/// Multi-controlled X with K = controls.size() ≥ 2. Controls after the first
/// and the target need auxiliary modes; labels "rsb" / "rsb_aux" mark the
/// sideband-role blocks.
Lowering compile_kcnot(const std::vector<LogicalEntry> &controls, const LogicalEntry &target,
                       const Resources &res);

/// Loads the all-ones condition of `controls` onto res.control_qubit, applies
/// `inner` (cnot to a dual-rail target, or cswap) controlled by it, unwinds.
Lowering compile_multi_controlled(const std::vector<LogicalEntry> &controls, const LogicalGate &inner,
                                  const LogicalRegister &reg, const Resources &res);

/// Ideal exp(−iθ/2 X⊗X) between internal qubits.
Lowering compile_native_xx(double theta, const LogicalEntry &a, const LogicalEntry &b);

struct AncillaBorrow {
    std::size_t gate_index = 0;
    std::string subsystem;
    /// "bs", "exchange", "control", or "com".
    std::string role;
};

struct GateRecord {
    std::size_t gate_index = 0;
    std::string label;
    std::size_t op_begin = 0;
    std::size_t op_end = 0;
    double global_phase = 0.0;
    std::vector<AncillaBorrow> borrowed;
    std::vector<Block> blocks; // absolute op indices
};

struct CompiledProgram {
    std::vector<PhysicalOp> ops;
    std::vector<GateRecord> gates;
    std::vector<AncillaBorrow> ancilla_manifest;
    double global_phase = 0.0;

    std::size_t count_blocks(std::string_view label) const;
};

/// Ancillas a gate needs from the pool (bs, exchange, control) without allocating.
std::vector<std::string> ancilla_roles(const LogicalGate &gate, const LogicalRegister &reg);

/// Lowers a gate with explicitly chosen resources.
Lowering compile_gate(const LogicalGate &gate, const LogicalRegister &reg, const Resources &res);

/// Concatenates all lowerings with least-recently-used ancilla checkout.
/// Throws Error(kResourceExhausted) naming the gate index when the pool or
/// COM mode is insufficient.
CompiledProgram compile_program(const std::vector<LogicalGate> &circuit, const LogicalRegister &reg);

struct HealthLimits {
    double ancilla_tol = 1e-9;
    double sentinel_tol = 1e-12;
    double com_tol = 1e-12;
    double norm_tol = 1e-10;
};

struct GateHealth {
    std::size_t gate_index = 0;
    double ancilla_deviation = 0.0; // worst 1 − ⟨ground⟩ over borrowed subsystems
    double leakage = 0.0;
};

struct ExecutionReport {
    StateVector final_state;
    std::vector<GateHealth> gates;
    double max_ancilla_deviation = 0.0;
    /// Worst top-Fock-level population seen after any op (modes with cutoff ≥ 4).
    double max_sentinel = 0.0;
    /// Worst COM population above level 1 seen after any op.
    double max_com_excess = 0.0;
    double max_norm_deviation = 0.0;
    bool healthy = true;
    std::string failure;
};

/// Runs a compiled program op by op, monitoring borrowed ancillas, the COM
/// bound, sentinel Fock levels, and norm. With `strict`, a breach throws
/// Error(kAncillaUnavailable) or Error(kNumericHealth).
ExecutionReport execute(const CompiledProgram &program, const LogicalRegister &reg, const StateVector &initial,
                        const HealthLimits &limits = {}, bool strict = true);

} // namespace dualrail::compiler
