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

#include "dualrail/state.hpp"

#include <cmath>
#include <unordered_set>

#include "dualrail/error.hpp"

namespace dualrail {

namespace {

constexpr double kCorruptNorm = 1e-14;

struct SparseRow {
    std::vector<std::size_t> cols;
    std::vector<Complex> vals;
};

} // namespace

StateVector::StateVector(LayoutPtr layout, Eigen::VectorXcd amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (!layout_) {
        fail(ErrorCode::kInvalidArgument, "state requires a layout");
    }
    if (static_cast<std::size_t>(amps_.size()) != layout_->total_dim()) {
        fail(ErrorCode::kLayoutMismatch, "amplitude vector length " + std::to_string(amps_.size()) +
                                             " does not match layout dimension " +
                                             std::to_string(layout_->total_dim()));
    }
}

StateVector StateVector::ground(LayoutPtr layout) { return basis_index(std::move(layout), 0); }

StateVector StateVector::basis(LayoutPtr layout, std::span<const std::size_t> levels) {
    const std::size_t index = layout->basis_index(levels);
    return basis_index(std::move(layout), index);
}

StateVector StateVector::basis_index(LayoutPtr layout, std::size_t index) {
    if (!layout) {
        fail(ErrorCode::kInvalidArgument, "state requires a layout");
    }
    if (index >= layout->total_dim()) {
        fail(ErrorCode::kInvalidArgument, "basis index out of range");
    }
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout->total_dim()));
    amps(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(layout), std::move(amps));
}

void StateVector::normalize() {
    const double n = norm();
    if (!(n > kCorruptNorm)) {
        fail(ErrorCode::kCorruptState, "cannot normalize a zero-norm state");
    }
    amps_ /= n;
}

void StateVector::apply_local(std::span<const std::size_t> positions, const Eigen::MatrixXcd &local) {
    const HilbertLayout &lay = *layout_;
    std::size_t local_dim = 1;
    std::vector<bool> touched(lay.size(), false);
    for (std::size_t p : positions) {
        if (p >= lay.size() || touched[p]) {
            fail(ErrorCode::kInvalidArgument, "invalid or repeated subsystem position");
        }
        touched[p] = true;
        local_dim *= lay.dim(p);
    }
    if (static_cast<std::size_t>(local.rows()) != local_dim || static_cast<std::size_t>(local.cols()) != local_dim) {
        fail(ErrorCode::kLayoutMismatch, "local operator dimension does not match its subsystems");
    }

    // Offsets of each local basis state relative to a base index.
    std::vector<std::size_t> offsets(local_dim, 0);
    for (std::size_t l = 0; l < local_dim; ++l) {
        std::size_t rem = l;
        for (std::size_t p : positions) {
            offsets[l] += (rem % lay.dim(p)) * lay.stride(p);
            rem /= lay.dim(p);
        }
    }
    std::vector<SparseRow> rows(local_dim);
    for (std::size_t r = 0; r < local_dim; ++r) {
        for (std::size_t c = 0; c < local_dim; ++c) {
            const Complex v = local(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (v != Complex(0.0, 0.0)) {
                rows[r].cols.push_back(c);
                rows[r].vals.push_back(v);
            }
        }
    }

    std::vector<std::size_t> rest;
    for (std::size_t p = 0; p < lay.size(); ++p) {
        if (!touched[p]) {
            rest.push_back(p);
        }
    }
    std::vector<std::size_t> counter(rest.size(), 0);
    std::vector<Complex> in(local_dim);
    std::size_t base = 0;
    while (true) {
        for (std::size_t l = 0; l < local_dim; ++l) {
            in[l] = amps_(static_cast<Eigen::Index>(base + offsets[l]));
        }
        for (std::size_t r = 0; r < local_dim; ++r) {
            Complex acc(0.0, 0.0);
            const auto &row = rows[r];
            for (std::size_t k = 0; k < row.cols.size(); ++k) {
                acc += row.vals[k] * in[row.cols[k]];
            }
            amps_(static_cast<Eigen::Index>(base + offsets[r])) = acc;
        }
        std::size_t k = 0;
        for (; k < rest.size(); ++k) {
            const std::size_t p = rest[k];
            base += lay.stride(p);
            if (++counter[k] < lay.dim(p)) {
                break;
            }
            base -= counter[k] * lay.stride(p);
            counter[k] = 0;
        }
        if (k == rest.size()) {
            break;
        }
    }
}

std::vector<double> StateVector::level_populations(std::size_t pos) const {
    const HilbertLayout &lay = *layout_;
    std::vector<double> pops(lay.dim(pos), 0.0);
    for (std::size_t i = 0; i < lay.total_dim(); ++i) {
        pops[lay.level(i, pos)] += std::norm(amps_(static_cast<Eigen::Index>(i)));
    }
    return pops;
}

std::vector<double> StateVector::level_populations(std::string_view id) const {
    return level_populations(layout_->position(id));
}

double StateVector::mean_level(std::string_view id) const {
    const auto pops = level_populations(id);
    double mean = 0.0;
    for (std::size_t k = 0; k < pops.size(); ++k) {
        mean += static_cast<double>(k) * pops[k];
    }
    return mean;
}

StateVector ground_state(LayoutPtr layout) { return StateVector::ground(std::move(layout)); }

std::vector<std::size_t> positions_of(const HilbertLayout &layout, const std::vector<std::string> &ids) {
    std::vector<std::size_t> pos;
    pos.reserve(ids.size());
    std::unordered_set<std::string> seen;
    for (const auto &id : ids) {
        if (!seen.insert(id).second) {
            fail(ErrorCode::kInvalidArgument, "subsystem '" + id + "' listed twice");
        }
        pos.push_back(layout.position(id));
    }
    return pos;
}

void apply_embedded_unitary(StateVector &state, const OperatorMatrix &op) {
    const auto pos = positions_of(state.layout(), op.subsystem_ids);
    const double uerr = unitarity_error(op.entries);
    if (!(uerr <= kUnitaryTol)) {
        fail(ErrorCode::kNotUnitary, "operator is not unitary (deviation " + std::to_string(uerr) + ")");
    }
    state.apply_local(pos, op.entries);
}

StateVector apply_embedded_unitary(const StateVector &state, const OperatorMatrix &op) {
    StateVector out = state;
    apply_embedded_unitary(out, op);
    return out;
}

Complex overlap(const StateVector &a, const StateVector &b) {
    if (!(a.layout() == b.layout())) {
        fail(ErrorCode::kLayoutMismatch, "overlap of states over different layouts");
    }
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector &a, const StateVector &b) { return std::norm(overlap(a, b)); }

StateVector project_qubit(const StateVector &state, std::string_view qubit_id, int outcome) {
    const HilbertLayout &lay = state.layout();
    const std::size_t pos = lay.position(qubit_id, SubsystemKind::kQubit);
    Eigen::VectorXcd amps = state.amplitudes();
    for (std::size_t i = 0; i < lay.total_dim(); ++i) {
        if (static_cast<int>(lay.level(i, pos)) != outcome) {
            amps(static_cast<Eigen::Index>(i)) = 0.0;
        }
    }
    StateVector out(state.layout_ptr(), std::move(amps));
    out.normalize();
    return out;
}

MeasurementResult measure_qubit_z(const StateVector &state, std::string_view qubit_id, std::mt19937_64 &rng) {
    const std::size_t pos = state.layout().position(qubit_id, SubsystemKind::kQubit);
    const auto pops = state.level_populations(pos);
    if (pops[0] < kCorruptNorm && pops[1] < kCorruptNorm) {
        fail(ErrorCode::kCorruptState, "both projections of qubit '" + std::string(qubit_id) + "' vanish");
    }
    const double total = pops[0] + pops[1];
    const double p1 = pops[1] / total;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int outcome = uni(rng) < p1 ? 1 : 0;
    return {outcome, pops[0] / total, p1, project_qubit(state, qubit_id, outcome)};
}

MeasurementResult measure_qubit_z(const StateVector &state, std::string_view qubit_id, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return measure_qubit_z(state, qubit_id, rng);
}

} // namespace dualrail
