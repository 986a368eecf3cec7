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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dualrail/layout.hpp"
#include "dualrail/operator.hpp"
#include "dualrail/state.hpp"

namespace dualrail::pulse {

/**
 * Pulse primitives. Effects (qubit basis |↓⟩, |↑⟩; modes truncated):
 *
 *   carrier(θ,φ)   exp(−iθ/2 (σ₊e^{iφ} + σ₋e^{−iφ}))            on (q)
 *   rsb(θ)         exp(−iθ/2 (σ₊â + σ₋â†))                       on (q, m)
 *   bs(θ,φ)        exp(+iθ (â₁†â₂e^{iφ} + â₁â₂†e^{−iφ}))          on (m1, m2)
 *   zbs(θ,φ)       exp(−iθ σ_z (â₁†â₂e^{iφ} + â₁â₂†e^{−iφ}))      on (q, m1, m2)
 *   qphase(θ)      exp(−iθ/2 σ_z)                                on (q)
 *   xx(θ)          exp(−iθ/2 σ_x⊗σ_x), ideal internal–internal   on (q1, q2)
 */
enum class PulseKind { kCarrier, kRsb, kBeamsplitter, kZbs, kQphase, kNativeXX };

std::string_view kind_name(PulseKind kind);
std::optional<PulseKind> kind_from_name(std::string_view name);

struct PhysicalOp {
    PulseKind kind = PulseKind::kCarrier;
    double theta = 0.0;
    double phi = 0.0;
    std::vector<std::string> targets;
    /// Marks an op that belongs to an RSB-role unitary realized on an
    /// auxiliary mode. Annotation only; it does not change the effect.
    bool aux_flag = false;

    bool operator==(const PhysicalOp &) const = default;
};

PhysicalOp carrier(double theta, double phi, std::string qubit);
/// Only φ = 0 is supported; any other phase throws Error(kInvalidArgument).
PhysicalOp rsb(double theta, double phi, std::string qubit, std::string mode);
PhysicalOp rsb(double theta, std::string qubit, std::string mode);
PhysicalOp beamsplitter(double theta, double phi, std::string mode1, std::string mode2);
PhysicalOp zbs(double theta, double phi, std::string qubit, std::string mode1, std::string mode2);
PhysicalOp qphase(double theta, std::string qubit);
PhysicalOp native_xx(double theta, std::string qubit1, std::string qubit2);

/// Checks arity, subsystem kinds, and distinctness against a layout.
void validate(const PhysicalOp &op, const HilbertLayout &layout);

/// True for pulses that touch only qubits (carrier, qphase, xx).
bool is_qubit_only(const PhysicalOp &op);

/// Hermitian generator G and scale s with effect exp(i·s·G), over op.targets.
struct Generator {
    OperatorMatrix hermitian;
    double scale = 0.0;
};
Generator generator(const PhysicalOp &op, const HilbertLayout &layout);

/// Effect matrix over op.targets via closed forms (carrier, qphase, rsb, xx)
/// or per-phonon-number block diagonalization (bs, zbs).
OperatorMatrix local_unitary(const PhysicalOp &op, const HilbertLayout &layout);
/// Effect matrix via exp_hermitian of the generator.
OperatorMatrix local_unitary_dense(const PhysicalOp &op, const HilbertLayout &layout);

/// Beamsplitter matrix on two modes of dimensions d1, d2 (first mode fastest).
Eigen::MatrixXcd beamsplitter_matrix(double theta, double phi, std::size_t d1, std::size_t d2);

void apply(StateVector &state, const PhysicalOp &op);
void apply(StateVector &state, const std::vector<PhysicalOp> &ops);

/// Inverse pulse (negated angle).
PhysicalOp inverse(const PhysicalOp &op);

std::string to_string(const PhysicalOp &op);

/// Ops plus the deterministic global phase (radians) they leave on the
/// intended target states, e^{i·global_phase}.
struct PulseSequence {
    std::vector<PhysicalOp> ops;
    double global_phase = 0.0;
};

/**
 * Conditional beamsplitter: |↓⟩⟨↓|⊗I + |↑⟩⟨↑|⊗B(θ,φ) on (qubit, m1, m2),
 * emitted as B(θ/2,φ) followed by ZBS(−θ/2,φ). With an ancilla, the B
 * factor is a ZBS on that ancilla (held in |↓⟩); without one it is a bare
 * beamsplitter pulse.
 */
std::vector<PhysicalOp> cbs(double theta, double phi, const std::string &qubit, const std::string &mode1,
                            const std::string &mode2, const std::optional<std::string> &ancilla);

/// Mirror of cbs acting on the |↓⟩ branch: |↓⟩⟨↓|⊗B(θ,φ) + |↑⟩⟨↑|⊗I.
std::vector<PhysicalOp> cbs_on_down(double theta, double phi, const std::string &qubit, const std::string &mode1,
                                    const std::string &mode2, const std::optional<std::string> &ancilla);

struct PulseParams {
    double eta1 = 0.0;
    double eta2 = 0.0;
    double omega1 = 0.0; // rad/s
    double omega2 = 0.0; // rad/s
    double delta_bs = 0.0;
    double t = 0.0; // s
    double omega_q = 0.0;
    double nu1 = 0.0;
    double nu2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
};

struct ZbsAngle {
    double theta = 0.0;
    double phi = 0.0;
};

/// θ = η₁η₂Ω₁Ω₂t/(4Δ_bs), φ = φ₁ − φ₂.
ZbsAngle zbs_angle_from_pulse(const PulseParams &p);
/// Duration that yields ZBS angle θ for the given couplings.
double zbs_duration_for_angle(const PulseParams &p, double theta);
/// δ_j = Δ_bs + ω_q − ν_j.
std::pair<double, double> raman_detunings(const PulseParams &p);
/// Time-independent effective Hamiltonian (rad/s) over (qubit, m1, m2).
OperatorMatrix zbs_effective_hamiltonian(const PulseParams &p, const HilbertLayout &layout, const std::string &qubit,
                                         const std::string &mode1, const std::string &mode2);

} // namespace dualrail::pulse
