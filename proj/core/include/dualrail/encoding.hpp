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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dualrail/layout.hpp"
#include "dualrail/pulse.hpp"
#include "dualrail/state.hpp"

namespace dualrail::encoding {

/**
 * Logical qubit kinds.
 *
 *   dual_rail      |0⟩ = |1⟩_{d0}|0⟩_{d1},  |1⟩ = |0⟩_{d0}|1⟩_{d1}
 *   internal       |0⟩ = |↓⟩,  |1⟩ = |↑⟩
 *   *_aux          as above plus an auxiliary mode b, held in vacuum on the
 *                  codewords; a phonon in b encodes the auxiliary level |2⟩.
 */
enum class LogicalKind { kDualRail, kInternal, kDualRailAux, kInternalAux };

std::string_view kind_name(LogicalKind kind);
std::optional<LogicalKind> kind_from_name(std::string_view name);

struct LogicalEntry {
    std::string id;
    LogicalKind kind = LogicalKind::kInternal;
    /// dual rail: (d0, d1[, b]); internal: (q[, b]).
    std::vector<std::string> physical;

    bool is_dual_rail() const { return kind == LogicalKind::kDualRail || kind == LogicalKind::kDualRailAux; }
    bool has_aux() const { return kind == LogicalKind::kDualRailAux || kind == LogicalKind::kInternalAux; }
    const std::string &qubit() const;
    const std::string &mode0() const;
    const std::string &mode1() const;
    const std::string &aux_mode() const;

    static LogicalEntry dual_rail(std::string id, std::string d0, std::string d1);
    static LogicalEntry internal(std::string id, std::string q);
    static LogicalEntry dual_rail_aux(std::string id, std::string d0, std::string d1, std::string aux);
    static LogicalEntry internal_aux(std::string id, std::string q, std::string aux);
};

/// Immutable assignment of logical qubits to physical subsystems.
class LogicalRegister {
  public:
    /// Throws Error(kInvalidRegister) on overlaps, arity or kind mismatches,
    /// and Error(kUnknownSubsystem) on ids missing from the layout.
    static LogicalRegister define(LayoutPtr layout, std::vector<LogicalEntry> entries,
                                  std::vector<std::string> ancilla_qubits = {},
                                  std::optional<std::string> com_mode = std::nullopt);

    const HilbertLayout &layout() const noexcept { return *layout_; }
    const LayoutPtr &layout_ptr() const noexcept { return layout_; }
    const std::vector<LogicalEntry> &entries() const noexcept { return entries_; }
    const std::vector<std::string> &ancilla_qubits() const noexcept { return ancillas_; }
    const std::optional<std::string> &com_mode() const noexcept { return com_; }

    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t logical_dim() const noexcept { return std::size_t{1} << entries_.size(); }
    std::optional<std::size_t> find(std::string_view id) const;
    std::size_t index_of(std::string_view id) const;
    const LogicalEntry &entry(std::string_view id) const { return entries_[index_of(id)]; }

    /// Physical basis index of logical basis state `logical_index`
    /// (first entry = most significant bit; everything else in level 0).
    std::size_t codeword_index(std::size_t logical_index) const;
    StateVector logical_basis_state(std::size_t logical_index) const;
    /// Embeds a 2^n logical amplitude vector into the physical space.
    StateVector embed(const Eigen::VectorXcd &logical_amplitudes) const;

    /// Subsystems the register leaves in their reference state: ancilla pool,
    /// COM mode, auxiliary modes, and any layout subsystem not assigned.
    std::vector<std::string> reference_subsystems() const;

  private:
    LayoutPtr layout_;
    std::vector<LogicalEntry> entries_;
    std::vector<std::string> ancillas_;
    std::optional<std::string> com_;
};

struct LogicalStateReport {
    Eigen::VectorXcd logical_amplitudes;
    double leakage = 0.0;
    /// Argument of the largest logical amplitude.
    double global_phase = 0.0;
};

LogicalStateReport extract_logical_state(const StateVector &state, const LogicalRegister &reg);
double leakage_probability(const StateVector &state, const LogicalRegister &reg);

/// Loads |0⟩_D from vacuum: carrier(π, 0) on the ancilla, then rsb(π) into d0.
/// Leaves the ancilla in |↓⟩ and the codeword with phase e^{iπ}.
pulse::PulseSequence prepare_dual_rail_zero(const LogicalRegister &reg, std::string_view logical_id,
                                            const std::string &ancilla_qubit);

struct DualRailMeasurement {
    int bit = 0;
    double probability_one = 0.0;
    StateVector collapsed;
};

/**
 * Maps |1⟩_D onto the ancilla with rsb(π) on d1, reads the ancilla, then
 * repeats rsb(π) so the ancilla returns to |↓⟩ and the phonon to d1.
 * Throws Error(kAncillaUnavailable) if the ancilla is not in |↓⟩.
 */
DualRailMeasurement measure_dual_rail(const StateVector &state, const LogicalRegister &reg,
                                      std::string_view logical_id, const std::string &ancilla_qubit,
                                      std::mt19937_64 &rng);
DualRailMeasurement measure_dual_rail(const StateVector &state, const LogicalRegister &reg,
                                      std::string_view logical_id, const std::string &ancilla_qubit,
                                      std::uint64_t seed);

/// Population of |↑⟩ (qubit) or of non-vacuum levels (mode).
double excitation(const StateVector &state, std::string_view id);

} // namespace dualrail::encoding
