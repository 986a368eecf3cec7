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

#include "dualrail/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Sparse>

#include "dualrail/error.hpp"

namespace dualrail::verify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI(0.0, 1.0);
constexpr double kBranchTol = 1e-9;

void check_restricted_budget(const LogicalRegister &reg) {
    if (reg.logical_dim() > kRestrictedBudget) {
        fail(ErrorCode::kDimensionBudget, "logical dimension " + std::to_string(reg.logical_dim()) +
                                              " exceeds the dense budget of " + std::to_string(kRestrictedBudget));
    }
}

void check_full_budget(const HilbertLayout &layout) {
    if (layout.total_dim() > kFullBudget) {
        fail(ErrorCode::kDimensionBudget, "physical dimension " + std::to_string(layout.total_dim()) +
                                              " exceeds the dense budget of " + std::to_string(kFullBudget));
    }
}

std::vector<std::string> logical_ids(const LogicalRegister &reg) {
    std::vector<std::string> ids;
    for (const auto &e : reg.entries()) {
        ids.push_back(e.id);
    }
    return ids;
}

std::vector<std::string> layout_ids(const HilbertLayout &layout) {
    std::vector<std::string> ids;
    for (const auto &s : layout.subsystems()) {
        ids.push_back(s.id);
    }
    return ids;
}

Eigen::SparseMatrix<Complex> embed_sparse(const OperatorMatrix &local, const HilbertLayout &lay) {
    const auto pos = positions_of(lay, local.subsystem_ids);
    std::vector<bool> touched(lay.size(), false);
    std::size_t ldim = 1;
    for (auto p : pos) {
        touched[p] = true;
        ldim *= lay.dim(p);
    }
    std::vector<std::size_t> offsets(ldim, 0);
    for (std::size_t l = 0; l < ldim; ++l) {
        std::size_t rem = l;
        for (auto p : pos) {
            offsets[l] += (rem % lay.dim(p)) * lay.stride(p);
            rem /= lay.dim(p);
        }
    }
    std::vector<Eigen::Triplet<Complex>> trips;
    for (std::size_t i = 0; i < lay.total_dim(); ++i) {
        bool base = true;
        for (auto p : pos) {
            base = base && lay.level(i, p) == 0;
        }
        if (!base) {
            continue;
        }
        for (std::size_t r = 0; r < ldim; ++r) {
            for (std::size_t c = 0; c < ldim; ++c) {
                const Complex v = local.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                if (std::abs(v) > 0.0) {
                    trips.emplace_back(static_cast<int>(i + offsets[r]), static_cast<int>(i + offsets[c]), v);
                }
            }
        }
    }
    const auto n = static_cast<Eigen::Index>(lay.total_dim());
    Eigen::SparseMatrix<Complex> s(n, n);
    s.setFromTriplets(trips.begin(), trips.end());
    return s;
}

std::string bits_label(const std::vector<int> &bits) {
    std::string s;
    for (int b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

} // namespace

LogicalAction logical_action(const std::vector<PhysicalOp> &ops, const LogicalRegister &reg) {
    check_restricted_budget(reg);
    const HilbertLayout &lay = reg.layout();
    for (const auto &op : ops) {
        pulse::validate(op, lay);
    }
    std::vector<std::size_t> ref_pos;
    for (const auto &id : reg.reference_subsystems()) {
        ref_pos.push_back(lay.position(id));
    }
    const std::size_t n = reg.logical_dim();
    LogicalAction act;
    act.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) {
        StateVector s = reg.logical_basis_state(c);
        pulse::apply(s, ops);
        for (std::size_t r = 0; r < n; ++r) {
            act.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.amplitude(reg.codeword_index(r));
        }
        const double kept = act.matrix.col(static_cast<Eigen::Index>(c)).squaredNorm();
        act.max_leakage = std::max(act.max_leakage, std::max(0.0, 1.0 - kept));
        for (auto p : ref_pos) {
            act.max_reference_deviation =
                std::max(act.max_reference_deviation, std::max(0.0, 1.0 - s.level_populations(p)[0]));
        }
        for (std::size_t p = 0; p < lay.size(); ++p) {
            if (lay.kind(p) == SubsystemKind::kMode && lay.dim(p) >= 4) {
                act.max_sentinel = std::max(act.max_sentinel, s.level_populations(p).back());
            }
        }
    }
    return act;
}

OperatorMatrix program_unitary(const std::vector<PhysicalOp> &ops, const LayoutPtr &layout,
                               const LogicalRegister *restrict) {
    if (restrict) {
        if (!(restrict->layout() == *layout)) {
            fail(ErrorCode::kLayoutMismatch, "register and layout differ");
        }
        return {logical_ids(*restrict), logical_action(ops, *restrict).matrix};
    }
    check_full_budget(*layout);
    for (const auto &op : ops) {
        pulse::validate(op, *layout);
    }
    const auto n = static_cast<Eigen::Index>(layout->total_dim());
    Eigen::MatrixXcd u(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        StateVector s = StateVector::basis_index(layout, static_cast<std::size_t>(c));
        pulse::apply(s, ops);
        u.col(c) = s.amplitudes();
    }
    return {layout_ids(*layout), u};
}

OperatorMatrix program_unitary(const CompiledProgram &program, const LayoutPtr &layout,
                               const LogicalRegister *restrict) {
    return program_unitary(program.ops, layout, restrict);
}

OperatorMatrix program_unitary_dense(const std::vector<PhysicalOp> &ops, const LayoutPtr &layout,
                                     const LogicalRegister *restrict) {
    check_full_budget(*layout);
    const auto n = static_cast<Eigen::Index>(layout->total_dim());
    Eigen::MatrixXcd acc;
    if (restrict) {
        check_restricted_budget(*restrict);
        const auto l = static_cast<Eigen::Index>(restrict->logical_dim());
        acc = Eigen::MatrixXcd::Zero(n, l);
        for (Eigen::Index k = 0; k < l; ++k) {
            acc(static_cast<Eigen::Index>(restrict->codeword_index(static_cast<std::size_t>(k))), k) = 1.0;
        }
    } else {
        acc = Eigen::MatrixXcd::Identity(n, n);
    }
    for (const auto &op : ops) {
        const OperatorMatrix local = pulse::local_unitary_dense(op, *layout);
        const Eigen::SparseMatrix<Complex> s = embed_sparse(local, *layout);
        acc = s * acc;
    }
    if (!restrict) {
        return {layout_ids(*layout), acc};
    }
    const auto l = static_cast<Eigen::Index>(restrict->logical_dim());
    Eigen::MatrixXcd out(l, l);
    for (Eigen::Index r = 0; r < l; ++r) {
        out.row(r) = acc.row(static_cast<Eigen::Index>(restrict->codeword_index(static_cast<std::size_t>(r))));
    }
    return {logical_ids(*restrict), out};
}

double wrap_phase(double phi) {
    double w = std::remainder(phi, 2.0 * kPi);
    if (w <= -kPi) {
        w += 2.0 * kPi;
    }
    return w;
}

EquivalenceReport equivalent_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorCode::kInvalidArgument, "cannot compare matrices of different dimensions");
    }
    EquivalenceReport rep;
    if (a.size() == 0) {
        rep.equivalent = true;
        return rep;
    }
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    if (std::abs(a(r, c)) > 0.0 && std::abs(b(r, c)) > 0.0) {
        rep.inferred_phase = wrap_phase(std::arg(b(r, c)) - std::arg(a(r, c)));
    }
    rep.max_entry_error = (a * std::exp(kI * rep.inferred_phase) - b).cwiseAbs().maxCoeff();
    rep.equivalent = rep.max_entry_error <= tol;
    return rep;
}

std::string_view flag_name(ParityFlag flag) {
    switch (flag) {
    case ParityFlag::kEven:
        return "even";
    case ParityFlag::kOdd:
        return "odd";
    case ParityFlag::kMixed:
        return "mixed";
    }
    return "unknown";
}

std::vector<PhysicalOp> qnd_parity_circuit(const std::string &q, const std::string &m1, const std::string &m2) {
    return {pulse::carrier(-kPi / 2.0, -kPi / 2.0, q), pulse::zbs(kPi / 2.0, 0.0, q, m1, m2),
            pulse::carrier(kPi / 2.0, -kPi / 2.0, q), pulse::zbs(kPi / 2.0, 0.0, q, m1, m2)};
}

ParityResult qnd_parity_check(const StateVector &state, const std::string &q, const std::string &m1,
                              const std::string &m2) {
    const std::size_t qpos = state.layout().position(q, SubsystemKind::kQubit);
    if (state.level_populations(qpos)[1] > kBranchTol) {
        fail(ErrorCode::kAncillaUnavailable, "parity qubit '" + q + "' must start in |down>");
    }
    ParityResult res{ParityFlag::kEven, 0.0, state, std::nullopt, std::nullopt};
    pulse::apply(res.post_state, qnd_parity_circuit(q, m1, m2));
    const auto pops = res.post_state.level_populations(qpos);
    res.probability_odd = pops[1];
    if (pops[1] > kBranchTol) {
        res.odd_branch = project_qubit(res.post_state, q, 1);
    }
    if (pops[0] > kBranchTol) {
        res.even_branch = project_qubit(res.post_state, q, 0);
    }
    if (pops[1] >= 1.0 - kBranchTol) {
        res.flag = ParityFlag::kOdd;
    } else if (pops[1] > kBranchTol) {
        res.flag = ParityFlag::kMixed;
    }
    return res;
}

StateVector continue_after_parity(const ParityResult &result, bool allow_midcircuit, std::mt19937_64 &rng) {
    if (!allow_midcircuit) {
        fail(ErrorCode::kInvalidArgument,
             "parity readout is end-of-circuit only; enable mid-circuit continuation explicitly");
    }
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const bool odd = uni(rng) < result.probability_odd;
    const auto &branch = odd ? result.odd_branch : result.even_branch;
    if (!branch) {
        fail(ErrorCode::kCorruptState, "selected parity branch is empty");
    }
    return *branch;
}

StateVector inject_heating_error(const StateVector &state, const std::string &mode, HeatingKind kind) {
    const HilbertLayout &lay = state.layout();
    const std::size_t pos = lay.position(mode, SubsystemKind::kMode);
    const std::size_t d = lay.dim(pos);
    if (kind == HeatingKind::kGain && state.level_populations(pos).back() >= 1e-12) {
        fail(ErrorCode::kInvalidArgument, "phonon gain on mode '" + mode + "' would cross the Fock cutoff");
    }
    const Eigen::MatrixXcd jump = kind == HeatingKind::kLoss ? fock::annihilation(d) : fock::creation(d);
    StateVector out = state;
    const std::size_t positions[] = {pos};
    out.apply_local(positions, jump);
    if (!(out.norm() > 1e-14)) {
        fail(ErrorCode::kCorruptState, "heating jump on mode '" + mode + "' annihilates the state");
    }
    out.normalize();
    return out;
}

StateVector reset_qubit(const StateVector &state, const std::string &q, std::mt19937_64 &rng) {
    MeasurementResult m = measure_qubit_z(state, q, rng);
    if (m.outcome == 1) {
        pulse::apply(m.collapsed, pulse::carrier(kPi, 0.0, q));
        m.collapsed.mutable_amplitudes() *= kI;
    }
    return m.collapsed;
}

SampleResult sample_counts(const StateVector &state, const LogicalRegister &reg,
                           const std::vector<std::string> &measured_ids, std::size_t shots, std::uint64_t seed) {
    if (!(state.layout() == reg.layout())) {
        fail(ErrorCode::kLayoutMismatch, "state and register use different layouts");
    }
    std::optional<std::string> reader;
    bool needs_reader = false;
    for (const auto &id : measured_ids) {
        needs_reader = needs_reader || reg.entry(id).is_dual_rail();
    }
    if (needs_reader) {
        for (const auto &a : reg.ancilla_qubits()) {
            if (encoding::excitation(state, a) <= kBranchTol) {
                reader = a;
                break;
            }
        }
        if (!reader) {
            fail(ErrorCode::kResourceExhausted, "dual-rail readout needs a ground ancilla qubit in the pool");
        }
    }

    struct Branch {
        StateVector state;
        double weight;
        std::vector<int> bits;
    };
    std::vector<Branch> branches{{state, state.amplitudes().squaredNorm(), {}}};
    for (const auto &id : measured_ids) {
        const auto &e = reg.entry(id);
        std::vector<Branch> next;
        for (auto &br : branches) {
            StateVector s = br.state;
            std::string probe;
            std::optional<PhysicalOp> map;
            if (e.is_dual_rail()) {
                map = pulse::rsb(kPi, *reader, e.mode1());
                pulse::apply(s, *map);
                probe = *reader;
            } else {
                probe = e.qubit();
            }
            const auto pops = s.level_populations(probe);
            for (int outcome = 0; outcome < 2; ++outcome) {
                const double p = pops[static_cast<std::size_t>(outcome)];
                if (p <= 1e-15) {
                    continue;
                }
                StateVector proj = project_qubit(s, probe, outcome);
                if (map) {
                    pulse::apply(proj, *map);
                }
                auto bits = br.bits;
                bits.push_back(outcome);
                next.push_back({std::move(proj), br.weight * p, std::move(bits)});
            }
        }
        branches = std::move(next);
    }

    SampleResult res;
    std::vector<double> weights;
    std::vector<std::string> labels;
    double total = 0.0;
    for (const auto &br : branches) {
        total += br.weight;
    }
    for (const auto &br : branches) {
        labels.push_back(bits_label(br.bits));
        weights.push_back(br.weight / total);
        res.probabilities[labels.back()] += weights.back();
    }
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
    for (std::size_t s = 0; s < shots; ++s) {
        ++res.counts[labels[dist(rng)]];
    }
    return res;
}

namespace logical {

Eigen::MatrixXcd rx(double theta) {
    Eigen::MatrixXcd m(2, 2);
    m << std::cos(theta / 2), -kI * std::sin(theta / 2), -kI * std::sin(theta / 2), std::cos(theta / 2);
    return m;
}

Eigen::MatrixXcd ry(double theta) {
    Eigen::MatrixXcd m(2, 2);
    m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
    return m;
}

Eigen::MatrixXcd rz(double theta) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = std::exp(-kI * theta / 2.0);
    m(1, 1) = std::exp(kI * theta / 2.0);
    return m;
}

Eigen::MatrixXcd hadamard() {
    Eigen::MatrixXcd m(2, 2);
    m << 1.0, 1.0, 1.0, -1.0;
    return m / std::sqrt(2.0);
}

Eigen::MatrixXcd cnot() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

Eigen::MatrixXcd cnot_reversed() {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(2, 2) = m(1, 3) = m(3, 1) = 1.0;
    return m;
}

Eigen::MatrixXcd rzz(double theta) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(3, 3) = std::exp(-kI * theta / 2.0);
    m(1, 1) = m(2, 2) = std::exp(kI * theta / 2.0);
    return m;
}

Eigen::MatrixXcd rxx(double theta) {
    Eigen::MatrixXcd m = std::cos(theta / 2) * Eigen::MatrixXcd::Identity(4, 4);
    m(0, 3) = m(3, 0) = m(1, 2) = m(2, 1) = -kI * std::sin(theta / 2);
    return m;
}

Eigen::MatrixXcd cswap(std::size_t n) {
    const std::size_t dim = std::size_t{1} << (2 * n + 1);
    const std::size_t half = std::size_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t ctrl = col >> (2 * n);
        const std::size_t a = (col >> n) & (half - 1);
        const std::size_t b = col & (half - 1);
        const std::size_t row = ctrl ? ((ctrl << (2 * n)) | (b << n) | a) : col;
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
    }
    return m;
}

Eigen::MatrixXcd mcx(std::size_t k) {
    const std::size_t dim = std::size_t{1} << (k + 1);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const auto a = static_cast<Eigen::Index>(dim - 2);
    const auto b = static_cast<Eigen::Index>(dim - 1);
    m(a, a) = m(b, b) = 0.0;
    m(a, b) = m(b, a) = 1.0;
    return m;
}

} // namespace logical

namespace {

using encoding::LogicalEntry;

IdentityCheck compare(std::string name, const Eigen::MatrixXcd &got, const Eigen::MatrixXcd &want, double phase,
                      double leakage, double tol) {
    IdentityCheck chk;
    chk.name = std::move(name);
    chk.report = equivalent_up_to_phase(got, want, tol);
    chk.report.leakage_max = leakage;
    chk.expected_phase = phase;
    const double phase_err = std::abs(wrap_phase(chk.report.inferred_phase + phase));
    chk.passed = chk.report.equivalent && phase_err <= tol && leakage <= tol;
    return chk;
}

IdentityCheck check_program(std::string name, const compiler::Lowering &l, const LogicalRegister &reg,
                            const Eigen::MatrixXcd &want, double tol) {
    const LogicalAction act = logical_action(l.ops, reg);
    return compare(std::move(name), act.matrix, want, l.global_phase,
                   std::max(act.max_leakage, act.max_reference_deviation), tol);
}

LayoutPtr make_layout(const std::vector<std::string> &qubits, const std::vector<std::string> &modes,
                      std::size_t cutoff) {
    std::vector<SubsystemSpec> specs;
    for (const auto &q : qubits) {
        specs.push_back(SubsystemSpec::qubit(q));
    }
    for (const auto &m : modes) {
        specs.push_back(SubsystemSpec::mode(m, cutoff));
    }
    return HilbertLayout::make_shared(std::move(specs));
}

} // namespace

std::vector<IdentityCheck> run_identity_suite(double tol) {
    std::vector<IdentityCheck> out;

    {
        // Conditional beamsplitter against the exponential of its generator.
        const auto lay = make_layout({"q"}, {"m1", "m2"}, 4);
        const double theta = 0.7;
        const double phi = 0.3;
        const auto ops = pulse::cbs(theta, phi, "q", "m1", "m2", std::nullopt);
        const OperatorMatrix got = program_unitary(ops, lay);
        const Eigen::MatrixXcd up = fock::sigma_plus() * fock::sigma_minus();
        const Eigen::MatrixXcd hop = pulse::generator(pulse::beamsplitter(1.0, phi, "m1", "m2"), *lay).hermitian.entries;
        const OperatorMatrix want = exp_hermitian({{"q", "m1", "m2"}, fock::tensor({up, hop})}, theta);
        out.push_back(compare("cbs_factorization", got.entries, want.entries, 0.0, 0.0, tol));
    }

    const auto lay2 = make_layout({"a"}, {"d0", "d1", "e0", "e1"}, 3);
    const auto dd = LogicalRegister::define(
        lay2, {LogicalEntry::dual_rail("D1", "d0", "d1"), LogicalEntry::dual_rail("D2", "e0", "e1")}, {"a"});
    out.push_back(check_program("rzz", compiler::compile_rzz(0.9, dd.entry("D1"), dd.entry("D2"), "a"), dd,
                                logical::rzz(0.9), tol));

    const auto lay3 = make_layout({"q", "a"}, {"d0", "d1"}, 4);
    const auto qd = LogicalRegister::define(
        lay3, {LogicalEntry::internal("q", "q"), LogicalEntry::dual_rail("D", "d0", "d1")}, {"a"});
    out.push_back(check_program("cnot_internal_to_dual", compiler::compile_cnot_hybrid(qd.entry("q"), qd.entry("D"), "a"),
                                qd, logical::cnot(), tol));
    out.push_back(check_program("cnot_dual_to_internal", compiler::compile_cnot_hybrid(qd.entry("D"), qd.entry("q"), "a"),
                                qd, logical::cnot_reversed(), tol));
    out.push_back(check_program("rxx", compiler::compile_rxx_hybrid(1.1, qd.entry("q"), qd.entry("D")), qd,
                                logical::rxx(1.1), tol));
    {
        Eigen::Matrix2cd u;
        u << Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.0, 0.8), Complex(0.6, 0.0);
        u = u * std::exp(kI * 0.4);
        const auto l = compiler::compile_su2_dual(logical::hadamard() * u, qd.entry("D"), "a");
        const auto lay1 = make_layout({"a"}, {"d0", "d1"}, 4);
        const auto d = LogicalRegister::define(lay1, {LogicalEntry::dual_rail("D", "d0", "d1")}, {"a"});
        out.push_back(check_program("su2_dual", l, d, logical::hadamard() * u, tol));
    }

    const auto lay4 = make_layout({"q", "a"}, {"d0", "d1", "e0", "e1"}, 3);
    const auto cs = LogicalRegister::define(lay4,
                                            {LogicalEntry::internal("q", "q"), LogicalEntry::dual_rail("D1", "d0", "d1"),
                                             LogicalEntry::dual_rail("D2", "e0", "e1")},
                                            {"a"});
    out.push_back(check_program("cswap", compiler::compile_cswap(cs.entry("q"), {cs.entry("D1")}, {cs.entry("D2")}, "a"),
                                cs, logical::cswap(1), tol));

    {
        const auto lay = make_layout({"c1", "c2", "t", "a"}, {"b2", "bt", "com"}, 3);
        const auto reg = LogicalRegister::define(
            lay,
            {LogicalEntry::internal("c1", "c1"), LogicalEntry::internal_aux("c2", "c2", "b2"),
             LogicalEntry::internal_aux("t", "t", "bt")},
            {"a"}, "com");
        compiler::Resources res;
        res.bs_ancilla = "a";
        res.com_mode = "com";
        const auto l = compiler::compile_kcnot({reg.entry("c1"), reg.entry("c2")}, reg.entry("t"), res);
        out.push_back(check_program("kcnot_k2", l, reg, logical::mcx(2), tol));
    }

    {
        const auto lay = make_layout({"q"}, {"m1", "m2"}, 4);
        const auto reg = LogicalRegister::define(lay, {LogicalEntry::dual_rail("D", "m1", "m2")}, {"q"});
        double worst = 0.0;
        for (std::size_t k = 0; k < 2; ++k) {
            const ParityResult pr = qnd_parity_check(reg.logical_basis_state(k), "q", "m1", "m2");
            worst = std::max(worst, 1.0 - pr.probability_odd);
        }
        IdentityCheck chk;
        chk.name = "qnd_parity";
        chk.report.equivalent = worst <= tol;
        chk.report.max_entry_error = worst;
        chk.passed = chk.report.equivalent;
        out.push_back(chk);
    }
    return out;
}

} // namespace dualrail::verify
