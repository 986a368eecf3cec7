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
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dualrail/compiler.hpp"
#include "dualrail/encoding.hpp"
#include "dualrail/pulse.hpp"
#include "dualrail/state.hpp"

namespace dualrail::verify {

using compiler::CompiledProgram;
using encoding::LogicalRegister;
using pulse::PhysicalOp;

/// Largest logical dimension for restricted unitaries.
inline constexpr std::size_t kRestrictedBudget = 256;
/// Largest physical dimension for unrestricted unitaries.
inline constexpr std::size_t kFullBudget = 4096;

/**
 * Unitary of an op sequence, built column by column by evolving basis
 * states through the specialized pulse paths. With `restrict`, columns are
 * the register's codewords and rows are read back on the codewords, giving
 * a 2^n × 2^n logical matrix (subsystem ids = logical ids).
 * Throws Error(kDimensionBudget) above the budgets.
 */
OperatorMatrix program_unitary(const std::vector<PhysicalOp> &ops, const LayoutPtr &layout,
                               const LogicalRegister *restrict = nullptr);
OperatorMatrix program_unitary(const CompiledProgram &program, const LayoutPtr &layout,
                               const LogicalRegister *restrict = nullptr);

/// Independent path: every pulse through exp_hermitian of its generator,
/// embedded as a sparse operator, and multiplied densely.
OperatorMatrix program_unitary_dense(const std::vector<PhysicalOp> &ops, const LayoutPtr &layout,
                                     const LogicalRegister *restrict = nullptr);

/// Logical action plus health of the evolved codeword columns.
struct LogicalAction {
    Eigen::MatrixXcd matrix;
    /// Worst per-column weight outside the codeword span.
    double max_leakage = 0.0;
    /// Worst per-column deviation of reference subsystems from ground.
    double max_reference_deviation = 0.0;
    /// Worst top-level population over modes with cutoff ≥ 4, at the end.
    double max_sentinel = 0.0;
};
LogicalAction logical_action(const std::vector<PhysicalOp> &ops, const LogicalRegister &reg);

struct EquivalenceReport {
    bool equivalent = false;
    double max_entry_error = 0.0;
    /// φ with A·e^{iφ} ≈ B, in (−π, π].
    double inferred_phase = 0.0;
    double leakage_max = 0.0;
};

/// Phase taken from the largest-magnitude entry of B.
EquivalenceReport equivalent_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol);

/// Wraps an angle into (−π, π].
double wrap_phase(double phi);

enum class ParityFlag { kEven, kOdd, kMixed };
std::string_view flag_name(ParityFlag flag);

struct ParityResult {
    ParityFlag flag = ParityFlag::kEven;
    double probability_odd = 0.0;
    /// State after the circuit, before any readout of q.
    StateVector post_state;
    /// Renormalized readout branches (q = |↓⟩ even, q = |↑⟩ odd), when present.
    std::optional<StateVector> even_branch;
    std::optional<StateVector> odd_branch;
};

/// R_Y(−π/2), Ẑ, R_Y(π/2), Ẑ on (q; m1, m2) with Ẑ = zbs(π/2, 0).
std::vector<PhysicalOp> qnd_parity_circuit(const std::string &q, const std::string &m1, const std::string &m2);

/// Maps the total phonon parity of (m1, m2) onto q (odd ⇒ |↑⟩). Throws
/// Error(kAncillaUnavailable) if q does not start in |↓⟩.
ParityResult qnd_parity_check(const StateVector &state, const std::string &q, const std::string &m1,
                              const std::string &m2);

/// Readout-conditioned continuation: returns the branch selected by a sampled
/// readout of q. Refused with Error(kInvalidArgument) unless `allow_midcircuit`.
StateVector continue_after_parity(const ParityResult &result, bool allow_midcircuit, std::mt19937_64 &rng);

enum class HeatingKind { kLoss, kGain };

/// Applies â (loss) or â† (gain) on `mode` and renormalizes.
StateVector inject_heating_error(const StateVector &state, const std::string &mode, HeatingKind kind);

/// Measures q and, on |↑⟩, rotates it back to |↓⟩.
StateVector reset_qubit(const StateVector &state, const std::string &q, std::mt19937_64 &rng);

struct SampleResult {
    /// Bitstrings in the order of `measured_ids`.
    std::map<std::string, std::size_t> counts;
    std::map<std::string, double> probabilities;
};

/// Exact readout distribution (internal: σ_z readout; dual-rail: sideband
/// map onto a ground ancilla from the register pool), then seeded sampling.
SampleResult sample_counts(const StateVector &state, const LogicalRegister &reg,
                           const std::vector<std::string> &measured_ids, std::size_t shots, std::uint64_t seed);

/// Standard logical matrices (first operand = most significant bit).
namespace logical {
Eigen::MatrixXcd rx(double theta);
Eigen::MatrixXcd ry(double theta);
Eigen::MatrixXcd rz(double theta);
Eigen::MatrixXcd hadamard();
Eigen::MatrixXcd cnot();          // control = first operand
Eigen::MatrixXcd cnot_reversed(); // control = second operand
Eigen::MatrixXcd rzz(double theta);
Eigen::MatrixXcd rxx(double theta);
/// Control first, then registers A (N qubits) and B (N qubits); swaps A ↔ B.
Eigen::MatrixXcd cswap(std::size_t n);
/// K controls then one target.
Eigen::MatrixXcd mcx(std::size_t k);
} // namespace logical

struct IdentityCheck {
    std::string name;
    bool passed = false;
    EquivalenceReport report;
    double expected_phase = 0.0;
};

/// Deterministic built-in suite covering every compiled construction.
std::vector<IdentityCheck> run_identity_suite(double tol = 1e-9);

} // namespace dualrail::verify
