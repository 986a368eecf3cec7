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

#include "dualrail/layout.hpp"

#include <unordered_set>

#include "dualrail/error.hpp"

namespace dualrail {

HilbertLayout HilbertLayout::create(std::vector<SubsystemSpec> specs) { return HilbertLayout(std::move(specs)); }

std::shared_ptr<const HilbertLayout> HilbertLayout::make_shared(std::vector<SubsystemSpec> specs) {
    return std::make_shared<const HilbertLayout>(HilbertLayout(std::move(specs)));
}

HilbertLayout::HilbertLayout(std::vector<SubsystemSpec> specs) : specs_(std::move(specs)) {
    if (specs_.empty()) {
        fail(ErrorCode::kInvalidLayout, "layout needs at least one subsystem");
    }
    std::unordered_set<std::string> seen;
    strides_.reserve(specs_.size());
    for (const auto &s : specs_) {
        if (s.id.empty()) {
            fail(ErrorCode::kInvalidLayout, "subsystem id must be non-empty");
        }
        if (!seen.insert(s.id).second) {
            fail(ErrorCode::kInvalidLayout, "duplicate subsystem id '" + s.id + "'");
        }
        if (s.kind == SubsystemKind::kQubit && s.dim != 2) {
            fail(ErrorCode::kInvalidLayout, "qubit '" + s.id + "' must have dimension 2");
        }
        if (s.kind == SubsystemKind::kMode && s.dim < kMinModeDim) {
            fail(ErrorCode::kInvalidLayout,
                 "mode '" + s.id + "' needs Fock cutoff >= " + std::to_string(kMinModeDim) + ", got " +
                     std::to_string(s.dim));
        }
        strides_.push_back(total_dim_);
        if (total_dim_ > kMaxTotalDim / s.dim) {
            fail(ErrorCode::kInvalidLayout, "layout dimension exceeds the supported maximum");
        }
        total_dim_ *= s.dim;
    }
}

std::optional<std::size_t> HilbertLayout::find(std::string_view id) const {
    for (std::size_t k = 0; k < specs_.size(); ++k) {
        if (specs_[k].id == id) {
            return k;
        }
    }
    return std::nullopt;
}

std::size_t HilbertLayout::position(std::string_view id) const {
    auto pos = find(id);
    if (!pos) {
        fail(ErrorCode::kUnknownSubsystem, "unknown subsystem '" + std::string(id) + "'");
    }
    return *pos;
}

std::size_t HilbertLayout::position(std::string_view id, SubsystemKind required) const {
    const std::size_t pos = position(id);
    if (specs_[pos].kind != required) {
        fail(ErrorCode::kWrongSubsystemKind, "subsystem '" + std::string(id) + "' is a " +
                                                 (specs_[pos].kind == SubsystemKind::kQubit ? "qubit" : "mode") +
                                                 ", expected a " +
                                                 (required == SubsystemKind::kQubit ? "qubit" : "mode"));
    }
    return pos;
}

std::size_t HilbertLayout::basis_index(std::span<const std::size_t> levels) const {
    if (levels.size() != specs_.size()) {
        fail(ErrorCode::kInvalidArgument, "basis label length does not match the layout");
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < specs_.size(); ++k) {
        if (levels[k] >= specs_[k].dim) {
            fail(ErrorCode::kInvalidArgument, "level out of range for subsystem '" + specs_[k].id + "'");
        }
        index += levels[k] * strides_[k];
    }
    return index;
}

std::vector<std::size_t> HilbertLayout::levels(std::size_t index) const {
    if (index >= total_dim_) {
        fail(ErrorCode::kInvalidArgument, "basis index out of range");
    }
    std::vector<std::size_t> out(specs_.size());
    for (std::size_t k = 0; k < specs_.size(); ++k) {
        out[k] = index % specs_[k].dim;
        index /= specs_[k].dim;
    }
    return out;
}

} // namespace dualrail
