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

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dualrail {

enum class SubsystemKind { kQubit, kMode };

/// Default number of Fock levels kept per vibrational mode (levels 0..3).
inline constexpr std::size_t kDefaultCutoff = 4;
/// Smallest admissible mode dimension: two single-phonon modes meeting at a
/// 50:50 beamsplitter populate Fock level 2.
inline constexpr std::size_t kMinModeDim = 3;
/// Hard cap on the tensor-product dimension of a layout.
inline constexpr std::size_t kMaxTotalDim = std::size_t{1} << 26;

struct SubsystemSpec {
    std::string id;
    SubsystemKind kind = SubsystemKind::kQubit;
    std::size_t dim = 2;

    static SubsystemSpec qubit(std::string id) { return {std::move(id), SubsystemKind::kQubit, 2}; }
    static SubsystemSpec mode(std::string id, std::size_t cutoff = kDefaultCutoff) {
        return {std::move(id), SubsystemKind::kMode, cutoff};
    }

    bool operator==(const SubsystemSpec &) const = default;
};

/**
 * Ordered registry of subsystems (internal qubits and truncated bosonic
 * modes) defining the tensor-product index arithmetic.
 *
 * Basis indices are little-endian mixed radix: the first registered
 * subsystem varies fastest, so `index = sum_k level_k * stride_k` with
 * `stride_0 = 1` and `stride_{k+1} = stride_k * dim_k`.
 */
class HilbertLayout {
  public:
    /// Validates ids and dimensions; throws Error(kInvalidLayout).
    static HilbertLayout create(std::vector<SubsystemSpec> specs);
    static std::shared_ptr<const HilbertLayout> make_shared(std::vector<SubsystemSpec> specs);

    std::size_t size() const noexcept { return specs_.size(); }
    std::size_t total_dim() const noexcept { return total_dim_; }

    const SubsystemSpec &subsystem(std::size_t pos) const { return specs_.at(pos); }
    const std::vector<SubsystemSpec> &subsystems() const noexcept { return specs_; }
    std::size_t dim(std::size_t pos) const { return specs_.at(pos).dim; }
    std::size_t stride(std::size_t pos) const { return strides_.at(pos); }
    SubsystemKind kind(std::size_t pos) const { return specs_.at(pos).kind; }

    std::optional<std::size_t> find(std::string_view id) const;
    /// Position of `id`; throws Error(kUnknownSubsystem) if absent.
    std::size_t position(std::string_view id) const;
    /// Position of `id`, additionally requiring the given kind.
    std::size_t position(std::string_view id, SubsystemKind required) const;
    bool contains(std::string_view id) const { return find(id).has_value(); }

    std::size_t basis_index(std::span<const std::size_t> levels) const;
    std::vector<std::size_t> levels(std::size_t index) const;
    std::size_t level(std::size_t index, std::size_t pos) const {
        return (index / strides_[pos]) % specs_[pos].dim;
    }

    bool operator==(const HilbertLayout &other) const { return specs_ == other.specs_; }

  private:
    explicit HilbertLayout(std::vector<SubsystemSpec> specs);

    std::vector<SubsystemSpec> specs_;
    std::vector<std::size_t> strides_;
    std::size_t total_dim_ = 1;
};

using LayoutPtr = std::shared_ptr<const HilbertLayout>;

} // namespace dualrail
