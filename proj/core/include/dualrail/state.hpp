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
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dualrail/layout.hpp"
#include "dualrail/operator.hpp"

namespace dualrail {

inline constexpr double kNormTol = 1e-10;

/// Complex amplitude vector over a shared HilbertLayout.
class StateVector {
  public:
    StateVector(LayoutPtr layout, Eigen::VectorXcd amplitudes);

    static StateVector ground(LayoutPtr layout);
    /// Computational basis state with one level per subsystem (layout order).
    static StateVector basis(LayoutPtr layout, std::span<const std::size_t> levels);
    static StateVector basis_index(LayoutPtr layout, std::size_t index);

    const HilbertLayout &layout() const noexcept { return *layout_; }
    const LayoutPtr &layout_ptr() const noexcept { return layout_; }
    const Eigen::VectorXcd &amplitudes() const noexcept { return amps_; }
    Eigen::VectorXcd &mutable_amplitudes() noexcept { return amps_; }
    Complex amplitude(std::size_t index) const { return amps_(static_cast<Eigen::Index>(index)); }

    double norm() const { return amps_.norm(); }
    void normalize();

    /// Applies `local` (over `positions`, first fastest) tensored with identity.
    /// Performs no unitarity check; callers validate.
    void apply_local(std::span<const std::size_t> positions, const Eigen::MatrixXcd &local);

    /// Probability of each level of one subsystem.
    std::vector<double> level_populations(std::size_t pos) const;
    std::vector<double> level_populations(std::string_view id) const;
    /// Mean occupation of a subsystem (phonon number for modes, |↑⟩ weight for qubits).
    double mean_level(std::string_view id) const;

  private:
    LayoutPtr layout_;
    Eigen::VectorXcd amps_;
};

StateVector ground_state(LayoutPtr layout);

/// Validates `op` (ids known, matching dimension, unitary within 1e-10) and
/// applies it in place.
void apply_embedded_unitary(StateVector &state, const OperatorMatrix &op);
StateVector apply_embedded_unitary(const StateVector &state, const OperatorMatrix &op);

/// Positions and total local dimension of the listed subsystems.
std::vector<std::size_t> positions_of(const HilbertLayout &layout, const std::vector<std::string> &ids);

/// ⟨a|b⟩; throws Error(kLayoutMismatch).
Complex overlap(const StateVector &a, const StateVector &b);
double fidelity(const StateVector &a, const StateVector &b);

struct MeasurementResult {
    int outcome = 0;
    double probability_zero = 0.0;
    double probability_one = 0.0;
    StateVector collapsed;
};

/// Projective σ_z readout of a qubit subsystem: outcome 0 ⇔ |↓⟩.
MeasurementResult measure_qubit_z(const StateVector &state, std::string_view qubit_id, std::mt19937_64 &rng);
MeasurementResult measure_qubit_z(const StateVector &state, std::string_view qubit_id, std::uint64_t seed);

/// Collapses a qubit to the given outcome without sampling.
StateVector project_qubit(const StateVector &state, std::string_view qubit_id, int outcome);

} // namespace dualrail
