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

#include "dualrail/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <unordered_map>
#include <unordered_set>

#include "dualrail/error.hpp"

namespace dualrail::compiler {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

Eigen::Matrix2cd rx_matrix(double t) {
    Eigen::Matrix2cd m;
    m << std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2);
    return m;
}

Eigen::Matrix2cd ry_matrix(double t) {
    Eigen::Matrix2cd m;
    m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return m;
}

void require_dual(const LogicalEntry &e, const char *role) {
    if (!e.is_dual_rail()) {
        fail(ErrorCode::kInvalidRegister, std::string(role) + " '" + e.id + "' must be a dual-rail qubit");
    }
}

void require_internal(const LogicalEntry &e, const char *role) {
    if (e.is_dual_rail()) {
        fail(ErrorCode::kInvalidRegister, std::string(role) + " '" + e.id + "' must be an internal qubit");
    }
}

PhysicalOp mode_rotation(double theta, double phi, const LogicalEntry &d, const std::optional<std::string> &ancilla) {
    if (ancilla) {
        return pulse::zbs(theta, phi, *ancilla, d.mode0(), d.mode1());
    }
    return pulse::beamsplitter(theta, phi, d.mode0(), d.mode1());
}

const std::string &require(const std::optional<std::string> &value, const std::string &what) {
    if (!value) {
        fail(ErrorCode::kResourceExhausted, what + " is required but none is available");
    }
    return *value;
}

} // namespace

std::string_view kind_name(GateKind kind) {
    switch (kind) {
    case GateKind::kSu2Dual:
        return "su2_dual";
    case GateKind::kSu2Internal:
        return "su2_internal";
    case GateKind::kRzz:
        return "rzz";
    case GateKind::kCnotHybrid:
        return "cnot_hybrid";
    case GateKind::kRxxHybrid:
        return "rxx_hybrid";
    case GateKind::kCswap:
        return "cswap";
    case GateKind::kKcnot:
        return "kcnot";
    case GateKind::kMultiControlled:
        return "multi_controlled";
    case GateKind::kNativeInternal2q:
        return "native_internal_2q";
    }
    return "unknown";
}

LogicalGate LogicalGate::su2(const Eigen::Matrix2cd &u, std::string target, bool dual_rail, std::string name) {
    LogicalGate g;
    g.kind = dual_rail ? GateKind::kSu2Dual : GateKind::kSu2Internal;
    g.name = std::move(name);
    g.matrix = u;
    g.targets = {std::move(target)};
    return g;
}

LogicalGate LogicalGate::rzz(double theta, std::string a, std::string b) {
    LogicalGate g;
    g.kind = GateKind::kRzz;
    g.name = "rzz";
    g.theta = theta;
    g.targets = {std::move(a), std::move(b)};
    return g;
}

LogicalGate LogicalGate::cnot(std::string control, std::string target, CnotDirection direction) {
    LogicalGate g;
    g.kind = GateKind::kCnotHybrid;
    g.name = "cnot";
    g.controls = {std::move(control)};
    g.targets = {std::move(target)};
    g.direction = direction;
    return g;
}

LogicalGate LogicalGate::rxx(double theta, std::string internal, std::string dual_rail) {
    LogicalGate g;
    g.kind = GateKind::kRxxHybrid;
    g.name = "rxx";
    g.theta = theta;
    g.targets = {std::move(internal), std::move(dual_rail)};
    return g;
}

LogicalGate LogicalGate::cswap(std::string control, std::vector<std::string> targets) {
    LogicalGate g;
    g.kind = GateKind::kCswap;
    g.name = "cswap";
    g.controls = {std::move(control)};
    g.targets = std::move(targets);
    return g;
}

LogicalGate LogicalGate::kcnot(std::vector<std::string> controls, std::string target) {
    LogicalGate g;
    g.kind = GateKind::kKcnot;
    g.name = "kcnot";
    g.controls = std::move(controls);
    g.targets = {std::move(target)};
    return g;
}

LogicalGate LogicalGate::multi_controlled(std::vector<std::string> controls, LogicalGate inner) {
    LogicalGate g;
    g.kind = GateKind::kMultiControlled;
    g.name = "mc[" + inner.name + "]";
    g.controls = std::move(controls);
    g.targets = inner.targets;
    g.inner = std::make_shared<const LogicalGate>(std::move(inner));
    return g;
}

LogicalGate LogicalGate::native_xx(double theta, std::string a, std::string b) {
    LogicalGate g;
    g.kind = GateKind::kNativeInternal2q;
    g.name = "xx";
    g.theta = theta;
    g.targets = {std::move(a), std::move(b)};
    return g;
}

void Lowering::push(PhysicalOp op) {
    if (std::abs(op.theta) < kElisionThreshold) {
        return;
    }
    ops.push_back(std::move(op));
}

void Lowering::append(const std::vector<PhysicalOp> &more) {
    for (const auto &op : more) {
        push(op);
    }
}

void Lowering::append(const Lowering &more, bool keep_blocks) {
    const std::size_t offset = ops.size();
    ops.insert(ops.end(), more.ops.begin(), more.ops.end());
    global_phase += more.global_phase;
    if (keep_blocks) {
        for (const auto &b : more.blocks) {
            blocks.push_back({b.label, b.begin + offset, b.end + offset});
        }
    }
}

void Lowering::append_block(const std::string &label, const std::vector<PhysicalOp> &more) {
    const std::size_t begin = ops.size();
    append(more);
    blocks.push_back({label, begin, ops.size()});
}

void Lowering::append_block(const std::string &label, const Lowering &more) {
    const std::size_t begin = ops.size();
    append(more, false);
    blocks.push_back({label, begin, ops.size()});
}

Lowering Lowering::inverse() const {
    Lowering inv;
    const std::size_t n = ops.size();
    inv.ops.reserve(n);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        inv.ops.push_back(pulse::inverse(*it));
    }
    inv.global_phase = -global_phase;
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
        inv.blocks.push_back({it->label, n - it->end, n - it->begin});
    }
    return inv;
}

std::size_t Lowering::count_blocks(std::string_view label) const {
    return static_cast<std::size_t>(
        std::count_if(blocks.begin(), blocks.end(), [&](const Block &b) { return b.label == label; }));
}

XyxAngles decompose_xyx(const Eigen::Matrix2cd &u) {
    if (!is_unitary(u, kUnitaryTol)) {
        fail(ErrorCode::kNotUnitary, "single-qubit gate matrix is not unitary");
    }
    // Conjugating by H maps X-Y-X onto Z-Y-Z with the middle angle negated.
    Eigen::Matrix2cd h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    const Eigen::Matrix2cd v = h * u * h;
    const double alpha0 = std::arg(v.determinant()) / 2.0;
    const Eigen::Matrix2cd w = v * std::exp(-kI * alpha0);
    const double b = 2.0 * std::atan2(std::abs(w(1, 0)), std::abs(w(0, 0)));
    double a = 0.0;
    double c = 0.0;
    if (std::abs(w(1, 0)) < 1e-12) {
        a = 2.0 * std::arg(w(1, 1));
    } else if (std::abs(w(0, 0)) < 1e-12) {
        a = 2.0 * std::arg(w(1, 0));
    } else {
        const double sum = std::arg(w(1, 1));
        const double diff = std::arg(w(1, 0));
        a = sum + diff;
        c = sum - diff;
    }
    XyxAngles out{0.0, a, -b, c};
    const Eigen::Matrix2cd m = rx_matrix(out.theta1) * ry_matrix(out.theta2) * rx_matrix(out.theta3);
    out.alpha = std::arg((m.adjoint() * u).trace());
    return out;
}

Lowering dual_rail_rx(double theta, const LogicalEntry &d, const std::optional<std::string> &ancilla) {
    require_dual(d, "target");
    Lowering l;
    l.push(mode_rotation(theta / 2.0, kPi, d, ancilla));
    return l;
}

Lowering dual_rail_ry(double theta, const LogicalEntry &d, const std::optional<std::string> &ancilla) {
    require_dual(d, "target");
    Lowering l;
    l.push(mode_rotation(theta / 2.0, kPi / 2.0, d, ancilla));
    return l;
}

Lowering internal_rx(double theta, const std::string &qubit) {
    Lowering l;
    l.push(pulse::carrier(theta, 0.0, qubit));
    return l;
}

Lowering internal_ry(double theta, const std::string &qubit) {
    Lowering l;
    l.push(pulse::carrier(theta, kPi / 2.0, qubit));
    return l;
}

Lowering compile_su2_dual(const Eigen::Matrix2cd &u, const LogicalEntry &d, const std::optional<std::string> &ancilla) {
    require_dual(d, "target");
    const XyxAngles a = decompose_xyx(u);
    Lowering l;
    l.append(dual_rail_rx(a.theta3, d, ancilla));
    l.append(dual_rail_ry(a.theta2, d, ancilla));
    l.append(dual_rail_rx(a.theta1, d, ancilla));
    l.global_phase = -a.alpha;
    return l;
}

Lowering compile_su2_internal(const Eigen::Matrix2cd &u, const LogicalEntry &q) {
    require_internal(q, "target");
    const XyxAngles a = decompose_xyx(u);
    Lowering l;
    l.append(internal_rx(a.theta3, q.qubit()));
    l.append(internal_ry(a.theta2, q.qubit()));
    l.append(internal_rx(a.theta1, q.qubit()));
    l.global_phase = -a.alpha;
    return l;
}

Lowering compile_rzz(double theta, const LogicalEntry &d1, const LogicalEntry &d2, const std::string &ancilla) {
    require_dual(d1, "operand");
    require_dual(d2, "operand");
    const std::string &m1 = d1.mode1();
    const std::string &m2 = d2.mode1();
    Lowering l;
    l.push(pulse::carrier(-kPi / 2.0, -kPi / 2.0, ancilla));
    l.push(pulse::zbs(kPi / 2.0, 0.0, ancilla, m1, m2));
    l.push(pulse::carrier(theta, 0.0, ancilla));
    l.push(pulse::zbs(-kPi / 2.0, 0.0, ancilla, m1, m2));
    l.push(pulse::carrier(kPi / 2.0, -kPi / 2.0, ancilla));
    return l;
}

Lowering compile_cnot_hybrid(const LogicalEntry &control, const LogicalEntry &target,
                             const std::optional<std::string> &ancilla) {
    if (!control.is_dual_rail() && target.is_dual_rail()) {
        Lowering l;
        l.append(pulse::cbs(kPi / 2.0, 0.0, control.qubit(), target.mode0(), target.mode1(), ancilla));
        l.push(pulse::qphase(kPi / 2.0, control.qubit()));
        l.global_phase = kPi / 4.0;
        return l;
    }
    if (control.is_dual_rail() && !target.is_dual_rail()) {
        // Y-rotation basis change swaps the roles of control and target.
        Lowering l;
        l.append(internal_ry(-kPi / 2.0, target.qubit()));
        l.append(dual_rail_ry(kPi / 2.0, control, ancilla));
        l.append(compile_cnot_hybrid(target, control, ancilla));
        l.append(internal_ry(kPi / 2.0, target.qubit()));
        l.append(dual_rail_ry(-kPi / 2.0, control, ancilla));
        return l;
    }
    fail(ErrorCode::kInvalidRegister, "hybrid CNOT needs one internal and one dual-rail operand ('" + control.id +
                                          "', '" + target.id + "')");
}

Lowering compile_rxx_hybrid(double theta, const LogicalEntry &q, const LogicalEntry &d) {
    require_internal(q, "first operand");
    require_dual(d, "second operand");
    Lowering l;
    l.push(pulse::zbs(-kPi / 4.0, 0.0, q.qubit(), d.mode0(), d.mode1()));
    l.push(pulse::carrier(-theta, -kPi / 2.0, q.qubit()));
    l.push(pulse::zbs(kPi / 4.0, 0.0, q.qubit(), d.mode0(), d.mode1()));
    return l;
}

Lowering compile_cswap(const LogicalEntry &q, const std::vector<LogicalEntry> &first,
                       const std::vector<LogicalEntry> &second, const std::optional<std::string> &ancilla) {
    require_internal(q, "control");
    if (first.empty() || first.size() != second.size()) {
        fail(ErrorCode::kInvalidArgument, "controlled swap needs two equally sized, non-empty target lists");
    }
    std::unordered_set<std::string> seen;
    for (const auto *list : {&first, &second}) {
        for (const auto &e : *list) {
            require_dual(e, "swap target");
            if (!seen.insert(e.id).second) {
                fail(ErrorCode::kInvalidArgument, "swap targets overlap at '" + e.id + "'");
            }
        }
    }
    Lowering l;
    for (std::size_t i = 0; i < first.size(); ++i) {
        l.append(pulse::cbs(kPi / 2.0, 0.0, q.qubit(), first[i].mode0(), second[i].mode0(), ancilla));
        l.append(pulse::cbs(kPi / 2.0, 0.0, q.qubit(), first[i].mode1(), second[i].mode1(), ancilla));
    }
    if (first.size() % 2 == 1) {
        // The |↑⟩ branch carries (−1)^N; qphase(π) = diag(i, −i) fixes it.
        l.push(pulse::qphase(kPi, q.qubit()));
        l.global_phase = kPi / 2.0;
    }
    return l;
}

Lowering ExchangeCircuits::exchange_in() const {
    Lowering l;
    l.append(c2);
    l.append(c1);
    return l;
}

Lowering ExchangeCircuits::exchange_out() const {
    Lowering l;
    l.append(c1);
    l.append(c2);
    return l;
}

ExchangeCircuits compile_exchange(const LogicalEntry &d, const std::string &exchange_qubit,
                                  const std::optional<std::string> &ancilla) {
    require_dual(d, "exchange operand");
    const LogicalEntry x = LogicalEntry::internal("exchange", exchange_qubit);
    return {compile_cnot_hybrid(x, d, ancilla), compile_cnot_hybrid(d, x, ancilla)};
}

namespace {

using CoreFn = std::function<std::vector<PhysicalOp>(const std::string &qubit)>;

// Runs `core` on the operand's internal qubit; a dual-rail operand is first
// moved onto the exchange qubit and moved back afterwards.
Lowering on_operand(const LogicalEntry &e, const Resources &res, const std::string &label, const CoreFn &core) {
    Lowering l;
    if (e.is_dual_rail()) {
        const std::string &x = require(res.exchange_qubit, "exchange qubit");
        const ExchangeCircuits ex = compile_exchange(e, x, res.bs_ancilla);
        l.append(ex.exchange_in());
        l.append_block(label, core(x));
        l.append(ex.exchange_out());
    } else {
        l.append_block(label, core(e.qubit()));
    }
    return l;
}

Lowering load_controls(const std::vector<LogicalEntry> &controls, const Resources &res, const std::string &com) {
    Lowering l;
    for (std::size_t i = 0; i < controls.size(); ++i) {
        const LogicalEntry &c = controls[i];
        if (i == 0) {
            l.append(on_operand(c, res, "rsb", [&](const std::string &q) {
                return std::vector<PhysicalOp>{pulse::rsb(kPi, q, com)};
            }));
        } else {
            const std::string &b = c.aux_mode();
            l.append(on_operand(c, res, "rsb_aux", [&](const std::string &q) {
                auto ops = pulse::cbs_on_down(-kPi / 2.0, 0.0, q, b, com, res.bs_ancilla);
                for (auto &op : ops) {
                    op.aux_flag = true;
                }
                return ops;
            }));
        }
    }
    return l;
}

void check_multi_operands(const std::vector<LogicalEntry> &controls, const std::vector<const LogicalEntry *> &aux_needed,
                          const Resources &res) {
    require(res.com_mode, "COM mode");
    require(res.bs_ancilla, "beamsplitter ancilla");
    std::unordered_set<std::string> seen;
    bool any_dual = false;
    for (const auto &c : controls) {
        if (!seen.insert(c.id).second) {
            fail(ErrorCode::kInvalidArgument, "logical qubit '" + c.id + "' used twice");
        }
        any_dual = any_dual || c.is_dual_rail();
    }
    for (const auto *e : aux_needed) {
        if (!e->has_aux()) {
            fail(ErrorCode::kResourceExhausted,
                 "logical qubit '" + e->id + "' needs an auxiliary mode (declare it as *_aux)");
        }
    }
    if (any_dual) {
        require(res.exchange_qubit, "exchange qubit");
    }
}

} // namespace

Lowering compile_kcnot(const std::vector<LogicalEntry> &controls, const LogicalEntry &target, const Resources &res) {
    if (controls.size() < 2) {
        fail(ErrorCode::kInvalidArgument, "multi-controlled X needs at least 2 controls");
    }
    std::vector<const LogicalEntry *> aux_needed;
    for (std::size_t i = 1; i < controls.size(); ++i) {
        aux_needed.push_back(&controls[i]);
    }
    aux_needed.push_back(&target);
    std::vector<LogicalEntry> all = controls;
    all.push_back(target);
    check_multi_operands(all, aux_needed, res);
    const std::string &com = *res.com_mode;

    const Lowering load = load_controls(controls, res, com);
    Lowering l;
    l.append(load);
    // A COM phonon flips the sign of the target's |0⟩ branch; the Y rotations
    // turn that sign into an X.
    l.append(on_operand(target, res, "target", [&](const std::string &q) {
        std::vector<PhysicalOp> ops;
        ops.push_back(pulse::carrier(kPi / 2.0, kPi / 2.0, q));
        for (auto &op : pulse::cbs_on_down(-kPi, 0.0, q, target.aux_mode(), com, res.bs_ancilla)) {
            ops.push_back(op);
        }
        ops.push_back(pulse::carrier(-kPi / 2.0, kPi / 2.0, q));
        return ops;
    }));
    l.append(load.inverse());
    return l;
}

Lowering compile_multi_controlled(const std::vector<LogicalEntry> &controls, const LogicalGate &inner,
                                  const LogicalRegister &reg, const Resources &res) {
    if (controls.empty()) {
        fail(ErrorCode::kInvalidArgument, "multi-controlled gate needs at least one control");
    }
    const std::string &qc = require(res.control_qubit, "control qubit");
    std::vector<const LogicalEntry *> aux_needed;
    for (std::size_t i = 1; i < controls.size(); ++i) {
        aux_needed.push_back(&controls[i]);
    }
    check_multi_operands(controls, aux_needed, res);
    const std::string &com = *res.com_mode;
    const LogicalEntry qce = LogicalEntry::internal("control", qc);

    Lowering body;
    switch (inner.kind) {
    case GateKind::kCnotHybrid: {
        if (inner.targets.size() != 1) {
            fail(ErrorCode::kInvalidArgument, "inner cnot needs exactly one target");
        }
        const LogicalEntry &t = reg.entry(inner.targets[0]);
        require_dual(t, "inner cnot target");
        body = compile_cnot_hybrid(qce, t, res.bs_ancilla);
        break;
    }
    case GateKind::kCswap: {
        if (inner.targets.empty() || inner.targets.size() % 2 != 0) {
            fail(ErrorCode::kInvalidArgument, "inner cswap needs an even number of targets");
        }
        const std::size_t n = inner.targets.size() / 2;
        std::vector<LogicalEntry> first;
        std::vector<LogicalEntry> second;
        for (std::size_t i = 0; i < n; ++i) {
            first.push_back(reg.entry(inner.targets[i]));
            second.push_back(reg.entry(inner.targets[n + i]));
        }
        body = compile_cswap(qce, first, second, res.bs_ancilla);
        break;
    }
    default:
        fail(ErrorCode::kUnsupportedGate, "multi-controlled wrapper supports inner cnot or cswap, not " +
                                              std::string(kind_name(inner.kind)));
    }
    for (const auto &c : controls) {
        for (const auto &t : inner.targets) {
            if (c.id == t) {
                fail(ErrorCode::kInvalidArgument, "logical qubit '" + c.id + "' is both control and target");
            }
        }
    }

    Lowering load = load_controls(controls, res, com);
    load.append_block("rsb", std::vector<PhysicalOp>{pulse::rsb(kPi, qc, com)});
    Lowering l;
    l.append(load);
    l.append_block("inner", body);
    l.append(load.inverse());
    return l;
}

Lowering compile_native_xx(double theta, const LogicalEntry &a, const LogicalEntry &b) {
    require_internal(a, "operand");
    require_internal(b, "operand");
    if (a.qubit() == b.qubit()) {
        fail(ErrorCode::kInvalidArgument, "native two-qubit gate needs distinct qubits");
    }
    Lowering l;
    l.push(pulse::native_xx(theta, a.qubit(), b.qubit()));
    return l;
}

std::size_t CompiledProgram::count_blocks(std::string_view label) const {
    std::size_t n = 0;
    for (const auto &g : gates) {
        for (const auto &b : g.blocks) {
            n += b.label == label ? 1 : 0;
        }
    }
    return n;
}

namespace {

void expect_operands(const LogicalGate &gate, std::size_t controls, std::size_t targets) {
    if (gate.controls.size() != controls || gate.targets.size() != targets) {
        fail(ErrorCode::kInvalidArgument, std::string(kind_name(gate.kind)) + " expects " +
                                              std::to_string(controls) + " control(s) and " +
                                              std::to_string(targets) + " target(s)");
    }
}

std::vector<LogicalEntry> entries_of(const LogicalRegister &reg, const std::vector<std::string> &ids) {
    std::vector<LogicalEntry> out;
    out.reserve(ids.size());
    for (const auto &id : ids) {
        out.push_back(reg.entry(id));
    }
    return out;
}

bool any_dual(const LogicalRegister &reg, const std::vector<std::string> &ids) {
    return std::any_of(ids.begin(), ids.end(), [&](const std::string &id) { return reg.entry(id).is_dual_rail(); });
}

} // namespace

std::vector<std::string> ancilla_roles(const LogicalGate &gate, const LogicalRegister &reg) {
    switch (gate.kind) {
    case GateKind::kSu2Dual:
    case GateKind::kCnotHybrid:
    case GateKind::kCswap:
        return {"bs"};
    case GateKind::kRzz:
        return {"parity"};
    case GateKind::kSu2Internal:
    case GateKind::kRxxHybrid:
    case GateKind::kNativeInternal2q:
        return {};
    case GateKind::kKcnot: {
        std::vector<std::string> operands = gate.controls;
        operands.insert(operands.end(), gate.targets.begin(), gate.targets.end());
        if (any_dual(reg, operands)) {
            return {"bs", "exchange"};
        }
        return {"bs"};
    }
    case GateKind::kMultiControlled:
        if (any_dual(reg, gate.controls)) {
            return {"control", "bs", "exchange"};
        }
        return {"control", "bs"};
    }
    return {};
}

Lowering compile_gate(const LogicalGate &gate, const LogicalRegister &reg, const Resources &res) {
    switch (gate.kind) {
    case GateKind::kSu2Dual: {
        expect_operands(gate, 0, 1);
        return compile_su2_dual(gate.matrix, reg.entry(gate.targets[0]), res.bs_ancilla);
    }
    case GateKind::kSu2Internal:
        expect_operands(gate, 0, 1);
        return compile_su2_internal(gate.matrix, reg.entry(gate.targets[0]));
    case GateKind::kRzz:
        expect_operands(gate, 0, 2);
        if (gate.targets[0] == gate.targets[1]) {
            fail(ErrorCode::kInvalidArgument, "rzz operands must differ");
        }
        return compile_rzz(gate.theta, reg.entry(gate.targets[0]), reg.entry(gate.targets[1]),
                           require(res.bs_ancilla, "parity ancilla"));
    case GateKind::kCnotHybrid: {
        expect_operands(gate, 1, 1);
        const LogicalEntry &c = reg.entry(gate.controls[0]);
        const LogicalEntry &t = reg.entry(gate.targets[0]);
        const CnotDirection dir = c.is_dual_rail() ? CnotDirection::kDualRailControlsInternal
                                                   : CnotDirection::kInternalControlsDualRail;
        if (dir != gate.direction) {
            fail(ErrorCode::kInvalidRegister, "cnot direction does not match the operand kinds");
        }
        return compile_cnot_hybrid(c, t, require(res.bs_ancilla, "beamsplitter ancilla"));
    }
    case GateKind::kRxxHybrid:
        expect_operands(gate, 0, 2);
        return compile_rxx_hybrid(gate.theta, reg.entry(gate.targets[0]), reg.entry(gate.targets[1]));
    case GateKind::kCswap: {
        if (gate.controls.size() != 1 || gate.targets.empty() || gate.targets.size() % 2 != 0) {
            fail(ErrorCode::kInvalidArgument, "cswap expects 1 control and an even number of targets");
        }
        const auto targets = entries_of(reg, gate.targets);
        const std::size_t n = targets.size() / 2;
        const std::vector<LogicalEntry> first(targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(n));
        const std::vector<LogicalEntry> second(targets.begin() + static_cast<std::ptrdiff_t>(n), targets.end());
        return compile_cswap(reg.entry(gate.controls[0]), first, second,
                             require(res.bs_ancilla, "beamsplitter ancilla"));
    }
    case GateKind::kKcnot:
        if (gate.targets.size() != 1) {
            fail(ErrorCode::kInvalidArgument, "kcnot expects exactly one target");
        }
        for (const auto &c : gate.controls) {
            if (c == gate.targets[0]) {
                fail(ErrorCode::kInvalidArgument, "logical qubit '" + c + "' is both control and target");
            }
        }
        return compile_kcnot(entries_of(reg, gate.controls), reg.entry(gate.targets[0]), res);
    case GateKind::kMultiControlled:
        if (!gate.inner) {
            fail(ErrorCode::kInvalidArgument, "multi-controlled gate without an inner gate");
        }
        return compile_multi_controlled(entries_of(reg, gate.controls), *gate.inner, reg, res);
    case GateKind::kNativeInternal2q:
        expect_operands(gate, 0, 2);
        return compile_native_xx(gate.theta, reg.entry(gate.targets[0]), reg.entry(gate.targets[1]));
    }
    fail(ErrorCode::kUnsupportedGate, "unknown gate kind");
}

CompiledProgram compile_program(const std::vector<LogicalGate> &circuit, const LogicalRegister &reg) {
    CompiledProgram prog;
    const auto &pool = reg.ancilla_qubits();
    std::vector<long> last_used(pool.size(), -1);
    for (std::size_t gi = 0; gi < circuit.size(); ++gi) {
        const LogicalGate &gate = circuit[gi];
        const auto roles = ancilla_roles(gate, reg);
        Resources res;
        std::vector<AncillaBorrow> borrowed;
        std::vector<bool> taken(pool.size(), false);
        for (const auto &role : roles) {
            std::optional<std::size_t> pick;
            for (std::size_t k = 0; k < pool.size(); ++k) {
                if (!taken[k] && (!pick || last_used[k] < last_used[*pick])) {
                    pick = k;
                }
            }
            if (!pick) {
                fail(ErrorCode::kResourceExhausted,
                     "gate " + std::to_string(gi) + " (" + gate.name + ") needs " + std::to_string(roles.size()) +
                         " ancilla qubit(s); the pool has " + std::to_string(pool.size()));
            }
            taken[*pick] = true;
            last_used[*pick] = static_cast<long>(gi);
            const std::string &id = pool[*pick];
            if (role == "control") {
                res.control_qubit = id;
            } else if (role == "exchange") {
                res.exchange_qubit = id;
            } else {
                res.bs_ancilla = id;
            }
            borrowed.push_back({gi, id, role});
        }
        if (gate.kind == GateKind::kKcnot || gate.kind == GateKind::kMultiControlled) {
            if (!reg.com_mode()) {
                fail(ErrorCode::kResourceExhausted,
                     "gate " + std::to_string(gi) + " (" + gate.name + ") needs a COM mode");
            }
            res.com_mode = reg.com_mode();
            borrowed.push_back({gi, *reg.com_mode(), "com"});
        }
        Lowering l;
        try {
            l = compile_gate(gate, reg, res);
        } catch (const Error &e) {
            throw Error(e.code(), "gate " + std::to_string(gi) + " (" + gate.name + "): " + e.what());
        }
        GateRecord rec;
        rec.gate_index = gi;
        rec.label = gate.name;
        rec.op_begin = prog.ops.size();
        for (const auto &b : l.blocks) {
            rec.blocks.push_back({b.label, b.begin + rec.op_begin, b.end + rec.op_begin});
        }
        prog.ops.insert(prog.ops.end(), l.ops.begin(), l.ops.end());
        rec.op_end = prog.ops.size();
        rec.global_phase = l.global_phase;
        rec.borrowed = borrowed;
        prog.ancilla_manifest.insert(prog.ancilla_manifest.end(), borrowed.begin(), borrowed.end());
        prog.global_phase += l.global_phase;
        prog.gates.push_back(std::move(rec));
    }
    return prog;
}

namespace {

double ground_deficit(const StateVector &s, std::size_t pos) { return std::max(0.0, 1.0 - s.level_populations(pos)[0]); }

struct OpScan {
    double sentinel = 0.0;
    double com_excess = 0.0;
};

// One pass over the amplitudes: top-level population of every mode with
// cutoff ≥ 4 (or every mode when `all_modes`), and COM weight above level 1.
OpScan scan(const StateVector &s, std::optional<std::size_t> com_pos, bool all_modes) {
    const HilbertLayout &lay = s.layout();
    std::vector<std::size_t> watched;
    for (std::size_t p = 0; p < lay.size(); ++p) {
        if (lay.kind(p) == SubsystemKind::kMode && (all_modes || lay.dim(p) >= 4)) {
            watched.push_back(p);
        }
    }
    std::vector<double> top(watched.size(), 0.0);
    OpScan out;
    const auto &a = s.amplitudes();
    for (std::size_t i = 0; i < lay.total_dim(); ++i) {
        const double p = std::norm(a(static_cast<Eigen::Index>(i)));
        if (p == 0.0) {
            continue;
        }
        for (std::size_t k = 0; k < watched.size(); ++k) {
            if (lay.level(i, watched[k]) + 1 == lay.dim(watched[k])) {
                top[k] += p;
            }
        }
        if (com_pos && lay.level(i, *com_pos) >= 2) {
            out.com_excess += p;
        }
    }
    for (double t : top) {
        out.sentinel = std::max(out.sentinel, t);
    }
    return out;
}

} // namespace

ExecutionReport execute(const CompiledProgram &program, const LogicalRegister &reg, const StateVector &initial,
                        const HealthLimits &limits, bool strict) {
    if (!(initial.layout() == reg.layout())) {
        fail(ErrorCode::kLayoutMismatch, "initial state and register use different layouts");
    }
    ExecutionReport rep{initial, {}, 0.0, 0.0, 0.0, 0.0, true, ""};
    StateVector &s = rep.final_state;
    const HilbertLayout &lay = s.layout();
    std::optional<std::size_t> com_pos;
    if (reg.com_mode()) {
        com_pos = lay.position(*reg.com_mode());
    }
    auto breach = [&](ErrorCode code, const std::string &msg) {
        if (rep.healthy) {
            rep.failure = msg;
        }
        rep.healthy = false;
        if (strict) {
            fail(code, msg);
        }
    };
    auto check_borrowed = [&](const GateRecord &g, const char *when) {
        double worst = 0.0;
        for (const auto &b : g.borrowed) {
            const double d = ground_deficit(s, lay.position(b.subsystem));
            worst = std::max(worst, d);
            if (d > limits.ancilla_tol) {
                breach(ErrorCode::kAncillaUnavailable, "gate " + std::to_string(g.gate_index) + ": ancilla '" +
                                                           b.subsystem + "' not in its reference state " + when +
                                                           " the gate (deviation " + std::to_string(d) + ")");
            }
        }
        return worst;
    };
    for (const auto &g : program.gates) {
        check_borrowed(g, "before");
        for (std::size_t k = g.op_begin; k < g.op_end; ++k) {
            pulse::apply(s, program.ops[k]);
            const OpScan sc = scan(s, com_pos, false);
            rep.max_sentinel = std::max(rep.max_sentinel, sc.sentinel);
            rep.max_com_excess = std::max(rep.max_com_excess, sc.com_excess);
            if (sc.sentinel > limits.sentinel_tol) {
                breach(ErrorCode::kNumericHealth, "op " + std::to_string(k) + ": sentinel Fock level populated (" +
                                                      std::to_string(sc.sentinel) + ")");
            }
            if (sc.com_excess > limits.com_tol) {
                breach(ErrorCode::kNumericHealth, "op " + std::to_string(k) + ": COM mode above one phonon (" +
                                                      std::to_string(sc.com_excess) + ")");
            }
        }
        GateHealth gh;
        gh.gate_index = g.gate_index;
        gh.ancilla_deviation = check_borrowed(g, "after");
        gh.leakage = encoding::leakage_probability(s, reg);
        rep.max_ancilla_deviation = std::max(rep.max_ancilla_deviation, gh.ancilla_deviation);
        const double nd = std::abs(s.norm() - 1.0);
        rep.max_norm_deviation = std::max(rep.max_norm_deviation, nd);
        if (nd > limits.norm_tol) {
            breach(ErrorCode::kNumericHealth,
                   "gate " + std::to_string(g.gate_index) + ": norm drifted by " + std::to_string(nd));
        }
        const OpScan boundary = scan(s, com_pos, true);
        if (boundary.sentinel > limits.sentinel_tol) {
            breach(ErrorCode::kNumericHealth, "gate " + std::to_string(g.gate_index) +
                                                  ": top Fock level populated at gate boundary (" +
                                                  std::to_string(boundary.sentinel) + ")");
        }
        rep.gates.push_back(gh);
    }
    return rep;
}

} // namespace dualrail::compiler
