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

#include "dualrail/pulse.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dualrail/error.hpp"

namespace dualrail::pulse {

namespace {

constexpr Complex kI(0.0, 1.0);

struct KindInfo {
    PulseKind kind;
    std::string_view name;
    std::array<SubsystemKind, 3> target_kinds;
    std::size_t arity;
};

constexpr std::array<KindInfo, 6> kKinds = {{
    {PulseKind::kCarrier, "carrier", {SubsystemKind::kQubit}, 1},
    {PulseKind::kRsb, "rsb", {SubsystemKind::kQubit, SubsystemKind::kMode}, 2},
    {PulseKind::kBeamsplitter, "bs", {SubsystemKind::kMode, SubsystemKind::kMode}, 2},
    {PulseKind::kZbs, "zbs", {SubsystemKind::kQubit, SubsystemKind::kMode, SubsystemKind::kMode}, 3},
    {PulseKind::kQphase, "qphase", {SubsystemKind::kQubit}, 1},
    {PulseKind::kNativeXX, "xx", {SubsystemKind::kQubit, SubsystemKind::kQubit}, 2},
}};

const KindInfo &info(PulseKind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) {
            return k;
        }
    }
    fail(ErrorCode::kInvalidArgument, "unknown pulse kind");
}

std::size_t dim_of(const HilbertLayout &layout, const std::string &id) { return layout.dim(layout.position(id)); }

// â₁†â₂e^{iφ} + â₁â₂†e^{−iφ} over (m1, m2), first mode fastest.
Eigen::MatrixXcd hopping(double phi, std::size_t d1, std::size_t d2) {
    const Eigen::MatrixXcd a1 = fock::annihilation(d1);
    const Eigen::MatrixXcd a2 = fock::annihilation(d2);
    const Eigen::MatrixXcd term = fock::tensor({Eigen::MatrixXcd(a1.adjoint()), a2});
    const Eigen::MatrixXcd h = std::exp(kI * phi) * term;
    return h + h.adjoint();
}

} // namespace

std::string_view kind_name(PulseKind kind) { return info(kind).name; }

std::optional<PulseKind> kind_from_name(std::string_view name) {
    for (const auto &k : kKinds) {
        if (k.name == name) {
            return k.kind;
        }
    }
    return std::nullopt;
}

PhysicalOp carrier(double theta, double phi, std::string qubit) {
    return {PulseKind::kCarrier, theta, phi, {std::move(qubit)}, false};
}

PhysicalOp rsb(double theta, double phi, std::string qubit, std::string mode) {
    if (phi != 0.0) {
        fail(ErrorCode::kInvalidArgument, "red-sideband pulses are defined for phi = 0 only");
    }
    return {PulseKind::kRsb, theta, 0.0, {std::move(qubit), std::move(mode)}, false};
}

PhysicalOp rsb(double theta, std::string qubit, std::string mode) {
    return rsb(theta, 0.0, std::move(qubit), std::move(mode));
}

PhysicalOp beamsplitter(double theta, double phi, std::string mode1, std::string mode2) {
    return {PulseKind::kBeamsplitter, theta, phi, {std::move(mode1), std::move(mode2)}, false};
}

PhysicalOp zbs(double theta, double phi, std::string qubit, std::string mode1, std::string mode2) {
    return {PulseKind::kZbs, theta, phi, {std::move(qubit), std::move(mode1), std::move(mode2)}, false};
}

PhysicalOp qphase(double theta, std::string qubit) { return {PulseKind::kQphase, theta, 0.0, {std::move(qubit)}, false}; }

PhysicalOp native_xx(double theta, std::string qubit1, std::string qubit2) {
    return {PulseKind::kNativeXX, theta, 0.0, {std::move(qubit1), std::move(qubit2)}, false};
}

void validate(const PhysicalOp &op, const HilbertLayout &layout) {
    const KindInfo &k = info(op.kind);
    const std::string name(k.name);
    if (op.targets.size() != k.arity) {
        fail(ErrorCode::kInvalidArgument, name + " expects " + std::to_string(k.arity) + " targets, got " +
                                              std::to_string(op.targets.size()));
    }
    if (!std::isfinite(op.theta) || !std::isfinite(op.phi)) {
        fail(ErrorCode::kInvalidArgument, name + " angle is not finite");
    }
    if (op.kind == PulseKind::kRsb && op.phi != 0.0) {
        fail(ErrorCode::kInvalidArgument, "red-sideband pulses are defined for phi = 0 only");
    }
    for (std::size_t i = 0; i < k.arity; ++i) {
        layout.position(op.targets[i], k.target_kinds[i]);
        for (std::size_t j = 0; j < i; ++j) {
            if (op.targets[i] == op.targets[j]) {
                fail(ErrorCode::kInvalidArgument, name + " targets must be distinct ('" + op.targets[i] + "')");
            }
        }
    }
}

bool is_qubit_only(const PhysicalOp &op) {
    return op.kind == PulseKind::kCarrier || op.kind == PulseKind::kQphase || op.kind == PulseKind::kNativeXX;
}

Generator generator(const PhysicalOp &op, const HilbertLayout &layout) {
    validate(op, layout);
    Generator g;
    g.hermitian.subsystem_ids = op.targets;
    switch (op.kind) {
    case PulseKind::kCarrier: {
        const Eigen::MatrixXcd h = std::exp(kI * op.phi) * fock::sigma_plus();
        g.hermitian.entries = h + h.adjoint();
        g.scale = -op.theta / 2.0;
        break;
    }
    case PulseKind::kRsb: {
        const std::size_t d = dim_of(layout, op.targets[1]);
        const Eigen::MatrixXcd h = fock::tensor({fock::sigma_plus(), fock::annihilation(d)});
        g.hermitian.entries = h + h.adjoint();
        g.scale = -op.theta / 2.0;
        break;
    }
    case PulseKind::kBeamsplitter:
        g.hermitian.entries =
            hopping(op.phi, dim_of(layout, op.targets[0]), dim_of(layout, op.targets[1]));
        g.scale = op.theta;
        break;
    case PulseKind::kZbs:
        g.hermitian.entries = fock::tensor(
            {fock::sigma_z(), hopping(op.phi, dim_of(layout, op.targets[1]), dim_of(layout, op.targets[2]))});
        g.scale = -op.theta;
        break;
    case PulseKind::kQphase:
        g.hermitian.entries = fock::sigma_z();
        g.scale = -op.theta / 2.0;
        break;
    case PulseKind::kNativeXX:
        g.hermitian.entries = fock::tensor({fock::sigma_x(), fock::sigma_x()});
        g.scale = -op.theta / 2.0;
        break;
    }
    return g;
}

Eigen::MatrixXcd beamsplitter_matrix(double theta, double phi, std::size_t d1, std::size_t d2) {
    const auto n = static_cast<Eigen::Index>(d1 * d2);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    const Complex hop = std::exp(kI * phi);
    // The generator conserves n1 + n2; diagonalize each fixed-total block.
    for (std::size_t total = 0; total <= (d1 - 1) + (d2 - 1); ++total) {
        std::vector<std::size_t> idx;
        std::vector<std::size_t> n1s;
        for (std::size_t n1 = 0; n1 < d1; ++n1) {
            if (total >= n1 && total - n1 < d2) {
                n1s.push_back(n1);
                idx.push_back(n1 + d1 * (total - n1));
            }
        }
        const auto b = static_cast<Eigen::Index>(idx.size());
        if (b == 1) {
            // Isolated state: only the diagonal survives, the generator is zero here.
            u(static_cast<Eigen::Index>(idx[0]), static_cast<Eigen::Index>(idx[0])) = 1.0;
            continue;
        }
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(b, b);
        for (Eigen::Index k = 0; k + 1 < b; ++k) {
            // ⟨n1+1, n2−1| â₁†â₂ |n1, n2⟩ = √(n1+1)·√n2; consecutive n1 differ by 1.
            const double n1 = static_cast<double>(n1s[static_cast<std::size_t>(k)]);
            const double n2 = static_cast<double>(total) - n1;
            const Complex amp = std::sqrt((n1 + 1.0) * n2) * hop;
            h(k + 1, k) = amp;
            h(k, k + 1) = std::conj(amp);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        const Eigen::VectorXcd phases = (kI * theta * es.eigenvalues().cast<Complex>()).array().exp();
        const Eigen::MatrixXcd block = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        for (Eigen::Index r = 0; r < b; ++r) {
            for (Eigen::Index c = 0; c < b; ++c) {
                u(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]),
                  static_cast<Eigen::Index>(idx[static_cast<std::size_t>(c)])) = block(r, c);
            }
        }
    }
    return u;
}

OperatorMatrix local_unitary(const PhysicalOp &op, const HilbertLayout &layout) {
    validate(op, layout);
    OperatorMatrix out;
    out.subsystem_ids = op.targets;
    const double c = std::cos(op.theta / 2.0);
    const double s = std::sin(op.theta / 2.0);
    switch (op.kind) {
    case PulseKind::kCarrier: {
        Eigen::MatrixXcd u(2, 2);
        u << c, -kI * s * std::exp(-kI * op.phi), -kI * s * std::exp(kI * op.phi), c;
        out.entries = u;
        break;
    }
    case PulseKind::kQphase: {
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2, 2);
        u(0, 0) = std::exp(kI * op.theta / 2.0);
        u(1, 1) = std::exp(-kI * op.theta / 2.0);
        out.entries = u;
        break;
    }
    case PulseKind::kRsb: {
        const std::size_t d = dim_of(layout, op.targets[1]);
        const auto n = static_cast<Eigen::Index>(2 * d);
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
        // |↓, m+1⟩ (index 2m+2) ↔ |↑, m⟩ (index 2m+1) at Rabi angle θ√(m+1).
        for (std::size_t m = 0; m + 1 < d; ++m) {
            const double half = op.theta * std::sqrt(static_cast<double>(m + 1)) / 2.0;
            const auto down = static_cast<Eigen::Index>(2 * m + 2);
            const auto up = static_cast<Eigen::Index>(2 * m + 1);
            u(down, down) = std::cos(half);
            u(up, up) = std::cos(half);
            u(up, down) = -kI * std::sin(half);
            u(down, up) = -kI * std::sin(half);
        }
        out.entries = u;
        break;
    }
    case PulseKind::kBeamsplitter:
        out.entries = beamsplitter_matrix(op.theta, op.phi, dim_of(layout, op.targets[0]),
                                          dim_of(layout, op.targets[1]));
        break;
    case PulseKind::kZbs: {
        const std::size_t d1 = dim_of(layout, op.targets[1]);
        const std::size_t d2 = dim_of(layout, op.targets[2]);
        // |↓⟩ (σ_z = −1) sees B(θ), |↑⟩ sees B(−θ).
        const Eigen::MatrixXcd down = beamsplitter_matrix(op.theta, op.phi, d1, d2);
        const Eigen::MatrixXcd up = beamsplitter_matrix(-op.theta, op.phi, d1, d2);
        const auto m = static_cast<Eigen::Index>(d1 * d2);
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
        for (Eigen::Index r = 0; r < m; ++r) {
            for (Eigen::Index col = 0; col < m; ++col) {
                u(2 * r, 2 * col) = down(r, col);
                u(2 * r + 1, 2 * col + 1) = up(r, col);
            }
        }
        out.entries = u;
        break;
    }
    case PulseKind::kNativeXX: {
        Eigen::MatrixXcd u = c * Eigen::MatrixXcd::Identity(4, 4);
        u(0, 3) = u(3, 0) = u(1, 2) = u(2, 1) = -kI * s;
        out.entries = u;
        break;
    }
    }
    return out;
}

OperatorMatrix local_unitary_dense(const PhysicalOp &op, const HilbertLayout &layout) {
    const Generator g = generator(op, layout);
    return exp_hermitian(g.hermitian, g.scale);
}

void apply(StateVector &state, const PhysicalOp &op) {
    const OperatorMatrix u = local_unitary(op, state.layout());
    state.apply_local(positions_of(state.layout(), u.subsystem_ids), u.entries);
}

void apply(StateVector &state, const std::vector<PhysicalOp> &ops) {
    for (const auto &op : ops) {
        apply(state, op);
    }
}

PhysicalOp inverse(const PhysicalOp &op) {
    PhysicalOp inv = op;
    inv.theta = -op.theta;
    return inv;
}

std::string to_string(const PhysicalOp &op) {
    std::ostringstream os;
    os << std::setprecision(12) << kind_name(op.kind) << "(theta=" << op.theta;
    if (op.kind == PulseKind::kCarrier || op.kind == PulseKind::kBeamsplitter || op.kind == PulseKind::kZbs) {
        os << ", phi=" << op.phi;
    }
    os << ")";
    for (const auto &t : op.targets) {
        os << ' ' << t;
    }
    if (op.aux_flag) {
        os << " [aux]";
    }
    return os.str();
}

std::vector<PhysicalOp> cbs(double theta, double phi, const std::string &qubit, const std::string &mode1,
                            const std::string &mode2, const std::optional<std::string> &ancilla) {
    std::vector<PhysicalOp> ops;
    if (ancilla) {
        if (*ancilla == qubit) {
            fail(ErrorCode::kInvalidArgument, "cbs ancilla must differ from the control qubit");
        }
        ops.push_back(zbs(theta / 2.0, phi, *ancilla, mode1, mode2));
    } else {
        ops.push_back(beamsplitter(theta / 2.0, phi, mode1, mode2));
    }
    ops.push_back(zbs(-theta / 2.0, phi, qubit, mode1, mode2));
    return ops;
}

std::vector<PhysicalOp> cbs_on_down(double theta, double phi, const std::string &qubit, const std::string &mode1,
                                    const std::string &mode2, const std::optional<std::string> &ancilla) {
    std::vector<PhysicalOp> ops = cbs(theta, phi, qubit, mode1, mode2, ancilla);
    ops.back().theta = theta / 2.0;
    return ops;
}

ZbsAngle zbs_angle_from_pulse(const PulseParams &p) {
    if (p.delta_bs == 0.0) {
        fail(ErrorCode::kInvalidArgument, "beamsplitter detuning must be non-zero");
    }
    if (p.t < 0.0) {
        fail(ErrorCode::kInvalidArgument, "pulse duration must be non-negative");
    }
    return {p.eta1 * p.eta2 * p.omega1 * p.omega2 * p.t / (4.0 * p.delta_bs), p.phi1 - p.phi2};
}

double zbs_duration_for_angle(const PulseParams &p, double theta) {
    const double rate = p.eta1 * p.eta2 * p.omega1 * p.omega2;
    if (p.delta_bs == 0.0 || rate == 0.0) {
        fail(ErrorCode::kInvalidArgument, "couplings and detuning must be non-zero");
    }
    return 4.0 * p.delta_bs * theta / rate;
}

std::pair<double, double> raman_detunings(const PulseParams &p) {
    return {p.delta_bs + p.omega_q - p.nu1, p.delta_bs + p.omega_q - p.nu2};
}

OperatorMatrix zbs_effective_hamiltonian(const PulseParams &p, const HilbertLayout &layout, const std::string &qubit,
                                         const std::string &mode1, const std::string &mode2) {
    if (p.delta_bs == 0.0) {
        fail(ErrorCode::kInvalidArgument, "beamsplitter detuning must be non-zero");
    }
    validate(zbs(0.0, 0.0, qubit, mode1, mode2), layout);
    const double rate = p.eta1 * p.eta2 * p.omega1 * p.omega2 / (4.0 * p.delta_bs);
    const Eigen::MatrixXcd h =
        fock::tensor({fock::sigma_z(), hopping(p.phi1 - p.phi2, dim_of(layout, mode1), dim_of(layout, mode2))});
    return {{qubit, mode1, mode2}, rate * h};
}

} // namespace dualrail::pulse
