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

#include "dualrail/encoding.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "dualrail/error.hpp"

namespace dualrail::encoding {

namespace {

constexpr double kGroundTol = 1e-9;

constexpr std::array<std::pair<LogicalKind, std::string_view>, 4> kNames = {{
    {LogicalKind::kDualRail, "dual_rail"},
    {LogicalKind::kInternal, "internal"},
    {LogicalKind::kDualRailAux, "dual_rail_aux"},
    {LogicalKind::kInternalAux, "internal_aux"},
}};

std::size_t expected_arity(LogicalKind kind) {
    switch (kind) {
    case LogicalKind::kDualRail:
        return 2;
    case LogicalKind::kInternal:
        return 1;
    case LogicalKind::kDualRailAux:
        return 3;
    case LogicalKind::kInternalAux:
        return 2;
    }
    return 0;
}

void require_ground_qubit(const StateVector &state, const std::string &qubit) {
    const auto pops = state.level_populations(state.layout().position(qubit, SubsystemKind::kQubit));
    if (pops[1] > kGroundTol) {
        fail(ErrorCode::kAncillaUnavailable, "ancilla '" + qubit + "' is not in |down> (excited population " +
                                                 std::to_string(pops[1]) + ")");
    }
}

} // namespace

std::string_view kind_name(LogicalKind kind) {
    for (const auto &[k, n] : kNames) {
        if (k == kind) {
            return n;
        }
    }
    return "unknown";
}

std::optional<LogicalKind> kind_from_name(std::string_view name) {
    for (const auto &[k, n] : kNames) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

const std::string &LogicalEntry::qubit() const {
    if (is_dual_rail()) {
        fail(ErrorCode::kInvalidRegister, "logical qubit '" + id + "' is dual-rail, not internal");
    }
    return physical.at(0);
}

const std::string &LogicalEntry::mode0() const {
    if (!is_dual_rail()) {
        fail(ErrorCode::kInvalidRegister, "logical qubit '" + id + "' is internal, not dual-rail");
    }
    return physical.at(0);
}

const std::string &LogicalEntry::mode1() const {
    if (!is_dual_rail()) {
        fail(ErrorCode::kInvalidRegister, "logical qubit '" + id + "' is internal, not dual-rail");
    }
    return physical.at(1);
}

const std::string &LogicalEntry::aux_mode() const {
    if (!has_aux()) {
        fail(ErrorCode::kInvalidRegister, "logical qubit '" + id + "' has no auxiliary mode");
    }
    return physical.back();
}

LogicalEntry LogicalEntry::dual_rail(std::string id, std::string d0, std::string d1) {
    return {std::move(id), LogicalKind::kDualRail, {std::move(d0), std::move(d1)}};
}

LogicalEntry LogicalEntry::internal(std::string id, std::string q) {
    return {std::move(id), LogicalKind::kInternal, {std::move(q)}};
}

LogicalEntry LogicalEntry::dual_rail_aux(std::string id, std::string d0, std::string d1, std::string aux) {
    return {std::move(id), LogicalKind::kDualRailAux, {std::move(d0), std::move(d1), std::move(aux)}};
}

LogicalEntry LogicalEntry::internal_aux(std::string id, std::string q, std::string aux) {
    return {std::move(id), LogicalKind::kInternalAux, {std::move(q), std::move(aux)}};
}

LogicalRegister LogicalRegister::define(LayoutPtr layout, std::vector<LogicalEntry> entries,
                                        std::vector<std::string> ancilla_qubits, std::optional<std::string> com_mode) {
    if (!layout) {
        fail(ErrorCode::kInvalidArgument, "register requires a layout");
    }
    if (entries.size() > 20) {
        fail(ErrorCode::kInvalidRegister, "at most 20 logical qubits are supported");
    }
    std::unordered_set<std::string> logical_ids;
    std::unordered_set<std::string> used;
    auto claim = [&](const std::string &id, SubsystemKind kind, const std::string &what) {
        layout->position(id, kind);
        if (!used.insert(id).second) {
            fail(ErrorCode::kInvalidRegister, "physical subsystem '" + id + "' assigned twice (" + what + ")");
        }
    };
    for (const auto &e : entries) {
        if (e.id.empty() || !logical_ids.insert(e.id).second) {
            fail(ErrorCode::kInvalidRegister, "logical id '" + e.id + "' is empty or duplicated");
        }
        if (e.physical.size() != expected_arity(e.kind)) {
            fail(ErrorCode::kInvalidRegister, "logical qubit '" + e.id + "' of kind " +
                                                  std::string(kind_name(e.kind)) + " needs " +
                                                  std::to_string(expected_arity(e.kind)) + " physical ids");
        }
        const std::string what = "logical qubit '" + e.id + "'";
        if (e.is_dual_rail()) {
            claim(e.physical[0], SubsystemKind::kMode, what);
            claim(e.physical[1], SubsystemKind::kMode, what);
        } else {
            claim(e.physical[0], SubsystemKind::kQubit, what);
        }
        if (e.has_aux()) {
            claim(e.physical.back(), SubsystemKind::kMode, what);
        }
    }
    for (const auto &a : ancilla_qubits) {
        claim(a, SubsystemKind::kQubit, "ancilla pool");
    }
    if (com_mode) {
        claim(*com_mode, SubsystemKind::kMode, "COM mode");
    }
    LogicalRegister reg;
    reg.layout_ = std::move(layout);
    reg.entries_ = std::move(entries);
    reg.ancillas_ = std::move(ancilla_qubits);
    reg.com_ = std::move(com_mode);
    return reg;
}

std::optional<std::size_t> LogicalRegister::find(std::string_view id) const {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (entries_[k].id == id) {
            return k;
        }
    }
    return std::nullopt;
}

std::size_t LogicalRegister::index_of(std::string_view id) const {
    auto k = find(id);
    if (!k) {
        fail(ErrorCode::kInvalidRegister, "unknown logical qubit '" + std::string(id) + "'");
    }
    return *k;
}

std::size_t LogicalRegister::codeword_index(std::size_t logical_index) const {
    if (logical_index >= logical_dim()) {
        fail(ErrorCode::kInvalidArgument, "logical index out of range");
    }
    const HilbertLayout &lay = *layout_;
    const std::size_t n = entries_.size();
    std::size_t index = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const bool bit = ((logical_index >> (n - 1 - k)) & 1U) != 0;
        const auto &e = entries_[k];
        if (e.is_dual_rail()) {
            index += lay.stride(lay.position(bit ? e.physical[1] : e.physical[0]));
        } else if (bit) {
            index += lay.stride(lay.position(e.physical[0]));
        }
    }
    return index;
}

StateVector LogicalRegister::logical_basis_state(std::size_t logical_index) const {
    return StateVector::basis_index(layout_, codeword_index(logical_index));
}

StateVector LogicalRegister::embed(const Eigen::VectorXcd &logical_amplitudes) const {
    if (static_cast<std::size_t>(logical_amplitudes.size()) != logical_dim()) {
        fail(ErrorCode::kInvalidArgument, "logical amplitude vector has the wrong length");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout_->total_dim()));
    for (std::size_t k = 0; k < logical_dim(); ++k) {
        amps(static_cast<Eigen::Index>(codeword_index(k))) = logical_amplitudes(static_cast<Eigen::Index>(k));
    }
    return StateVector(layout_, std::move(amps));
}

std::vector<std::string> LogicalRegister::reference_subsystems() const {
    std::unordered_set<std::string> logical;
    for (const auto &e : entries_) {
        const std::size_t data = e.is_dual_rail() ? 2 : 1;
        for (std::size_t k = 0; k < data; ++k) {
            logical.insert(e.physical[k]);
        }
    }
    std::vector<std::string> out;
    for (const auto &s : layout_->subsystems()) {
        if (!logical.count(s.id)) {
            out.push_back(s.id);
        }
    }
    return out;
}

LogicalStateReport extract_logical_state(const StateVector &state, const LogicalRegister &reg) {
    if (!(state.layout() == reg.layout())) {
        fail(ErrorCode::kLayoutMismatch, "state and register use different layouts");
    }
    LogicalStateReport report;
    report.logical_amplitudes.resize(static_cast<Eigen::Index>(reg.logical_dim()));
    double best = -1.0;
    for (std::size_t k = 0; k < reg.logical_dim(); ++k) {
        const Complex a = state.amplitude(reg.codeword_index(k));
        report.logical_amplitudes(static_cast<Eigen::Index>(k)) = a;
        if (std::abs(a) > best + 1e-12) {
            best = std::abs(a);
            report.global_phase = std::arg(a);
        }
    }
    const double kept = report.logical_amplitudes.squaredNorm();
    report.leakage = std::clamp(state.amplitudes().squaredNorm() - kept, 0.0, 1.0);
    return report;
}

double leakage_probability(const StateVector &state, const LogicalRegister &reg) {
    return extract_logical_state(state, reg).leakage;
}

pulse::PulseSequence prepare_dual_rail_zero(const LogicalRegister &reg, std::string_view logical_id,
                                            const std::string &ancilla_qubit) {
    const LogicalEntry &e = reg.entry(logical_id);
    if (!e.is_dual_rail()) {
        fail(ErrorCode::kInvalidRegister, "logical qubit '" + e.id + "' is not dual-rail");
    }
    reg.layout().position(ancilla_qubit, SubsystemKind::kQubit);
    pulse::PulseSequence seq;
    seq.ops.push_back(pulse::carrier(std::numbers::pi, 0.0, ancilla_qubit));
    seq.ops.push_back(pulse::rsb(std::numbers::pi, ancilla_qubit, e.mode0()));
    // (−i) from the carrier times (−i) from the sideband.
    seq.global_phase = std::numbers::pi;
    return seq;
}

DualRailMeasurement measure_dual_rail(const StateVector &state, const LogicalRegister &reg,
                                      std::string_view logical_id, const std::string &ancilla_qubit,
                                      std::mt19937_64 &rng) {
    const LogicalEntry &e = reg.entry(logical_id);
    if (!e.is_dual_rail()) {
        fail(ErrorCode::kInvalidRegister, "logical qubit '" + e.id + "' is not dual-rail");
    }
    require_ground_qubit(state, ancilla_qubit);
    StateVector work = state;
    const pulse::PhysicalOp map = pulse::rsb(std::numbers::pi, ancilla_qubit, e.mode1());
    pulse::apply(work, map);
    MeasurementResult m = measure_qubit_z(work, ancilla_qubit, rng);
    pulse::apply(m.collapsed, map);
    return {m.outcome, m.probability_one, std::move(m.collapsed)};
}

DualRailMeasurement measure_dual_rail(const StateVector &state, const LogicalRegister &reg,
                                      std::string_view logical_id, const std::string &ancilla_qubit,
                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return measure_dual_rail(state, reg, logical_id, ancilla_qubit, rng);
}

double excitation(const StateVector &state, std::string_view id) {
    const auto pops = state.level_populations(id);
    return std::max(0.0, 1.0 - pops[0]);
}

} // namespace dualrail::encoding
