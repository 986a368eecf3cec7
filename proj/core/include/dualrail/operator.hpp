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

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dualrail/layout.hpp"

namespace dualrail {

using Complex = std::complex<double>;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;

/**
 * Dense operator over an ordered subset of layout subsystems.
 *
 * The local index follows the same little-endian convention as the layout:
 * the first listed subsystem varies fastest.
 */
struct OperatorMatrix {
    std::vector<std::string> subsystem_ids;
    Eigen::MatrixXcd entries;
};

/// Largest entrywise deviation of `m` from the identity.
double max_abs_deviation_from_identity(const Eigen::MatrixXcd &m);
/// ‖U†U − I‖_max.
double unitarity_error(const Eigen::MatrixXcd &u);
/// ‖H − H†‖_max.
double hermiticity_error(const Eigen::MatrixXcd &h);
bool is_unitary(const Eigen::MatrixXcd &u, double tol = kUnitaryTol);
bool is_hermitian(const Eigen::MatrixXcd &h, double tol = kHermitianTol);

namespace fock {

/// Truncated annihilation operator on levels 0..dim-1; â†|dim-1⟩ = 0.
Eigen::MatrixXcd annihilation(std::size_t dim);
Eigen::MatrixXcd creation(std::size_t dim);
Eigen::MatrixXcd number(std::size_t dim);

// Qubit basis: index 0 = |↓⟩, index 1 = |↑⟩.
Eigen::MatrixXcd sigma_plus();  // |↑⟩⟨↓|
Eigen::MatrixXcd sigma_minus(); // |↓⟩⟨↑|
Eigen::MatrixXcd sigma_x();     // σ₊ + σ₋
Eigen::MatrixXcd sigma_y();     // −i(σ₊ − σ₋)
Eigen::MatrixXcd sigma_z();     // |↑⟩⟨↑| − |↓⟩⟨↓|

/// Tensor product of local factors in layout order (first factor fastest).
Eigen::MatrixXcd tensor(std::initializer_list<Eigen::MatrixXcd> factors);
Eigen::MatrixXcd tensor(const std::vector<Eigen::MatrixXcd> &factors);

} // namespace fock

/// General matrix exponential exp(A) by scaling and squaring with a
/// diagonal Padé approximant of degree 3..13 chosen from ‖A‖₁.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd &a);

/// exp(i·scale·gen) for Hermitian `gen`; throws Error(kNotHermitian).
OperatorMatrix exp_hermitian(const OperatorMatrix &gen, double scale);

} // namespace dualrail
