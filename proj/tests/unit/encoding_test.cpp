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

#include <gtest/gtest.h>

#include <random>

#include "dualrail/compiler.hpp"
#include "dualrail/encoding.hpp"
#include "dualrail/error.hpp"
#include "dualrail/pulse.hpp"
#include "dualrail/verify.hpp"
#include "support/test_util.hpp"

namespace dualrail::encoding {
namespace {

using testing::kPi;
using testing::make_layout;

// Population of Fock level 2 on d0 after loading twice from vacuum:
// sin²(π/√2), from the √2-enhanced sideband on |↑,1̲⟩ ↔ |↓,2̲⟩.
constexpr double kDoublePrepLevel2 = 0.6331276710207078;

LogicalRegister single_dual(std::size_t cutoff = 4) {
    return LogicalRegister::define(make_layout({"a"}, {"d0", "d1"}, cutoff), {LogicalEntry::dual_rail("D", "d0", "d1")},
                                   {"a"});
}

LogicalRegister hybrid_pair() {
    return LogicalRegister::define(make_layout({"q1", "q2"}, {"m1", "m2"}),
                                   {LogicalEntry::internal("Q", "q1"), LogicalEntry::dual_rail("D", "m1", "m2")},
                                   {"q2"});
}

TEST(RegisterTest, CountsLogicalQubits) {
    const auto reg = hybrid_pair();
    EXPECT_EQ(reg.size(), 2u);
    EXPECT_EQ(reg.logical_dim(), 4u);
    EXPECT_EQ(reg.index_of("D"), 1u);
}

TEST(RegisterTest, RejectsOverlap) {
    const auto l = make_layout({"a"}, {"m1", "m2", "m3"});
    try {
        LogicalRegister::define(l, {LogicalEntry::dual_rail("A", "m1", "m2"), LogicalEntry::dual_rail("B", "m1", "m3")});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kInvalidRegister);
    }
    EXPECT_THROW(LogicalRegister::define(l, {LogicalEntry::dual_rail("A", "m1", "m2")}, {"a"}, "m2"), Error);
    EXPECT_THROW(LogicalRegister::define(l, {LogicalEntry::dual_rail("A", "m1", "m1")}), Error);
}

TEST(RegisterTest, RejectsMissingAuxAndUnknownIds) {
    const auto l = make_layout({"a"}, {"m1", "m2", "m3"});
    EXPECT_THROW(LogicalRegister::define(l, {LogicalEntry{"A", LogicalKind::kDualRailAux, {"m1", "m2"}}}), Error);
    EXPECT_THROW(LogicalRegister::define(l, {LogicalEntry::dual_rail("A", "m1", "zz")}), Error);
    EXPECT_THROW(LogicalRegister::define(l, {LogicalEntry::internal("A", "m1")}), Error);
    EXPECT_NO_THROW(LogicalRegister::define(l, {LogicalEntry::dual_rail_aux("A", "m1", "m2", "m3")}));
}

TEST(RegisterTest, CodewordsFollowTableTwo) {
    const auto reg = hybrid_pair();
    const auto &l = reg.layout();
    // Order (q1, q2, m1, m2); first entry is the most significant bit.
    const std::vector<std::size_t> c00{0, 0, 1, 0};
    const std::vector<std::size_t> c01{0, 0, 0, 1};
    const std::vector<std::size_t> c10{1, 0, 1, 0};
    const std::vector<std::size_t> c11{1, 0, 0, 1};
    EXPECT_EQ(reg.codeword_index(0), l.basis_index(c00));
    EXPECT_EQ(reg.codeword_index(1), l.basis_index(c01));
    EXPECT_EQ(reg.codeword_index(2), l.basis_index(c10));
    EXPECT_EQ(reg.codeword_index(3), l.basis_index(c11));
}

TEST(RegisterTest, KindNames) {
    for (auto k : {LogicalKind::kDualRail, LogicalKind::kInternal, LogicalKind::kDualRailAux, LogicalKind::kInternalAux}) {
        EXPECT_EQ(kind_from_name(kind_name(k)), k);
    }
    EXPECT_FALSE(kind_from_name("triple_rail"));
}

TEST(PrepareTest, LoadsPhononAndReturnsAncilla) {
    const auto reg = single_dual();
    const auto seq = prepare_dual_rail_zero(reg, "D", "a");
    ASSERT_EQ(seq.ops.size(), 2u);
    EXPECT_EQ(seq.ops[0], pulse::carrier(kPi, 0.0, "a"));
    EXPECT_EQ(seq.ops[1], pulse::rsb(kPi, "a", "d0"));
    auto s = ground_state(reg.layout_ptr());
    pulse::apply(s, seq.ops);
    const std::vector<std::size_t> target{0, 1, 0};
    const Complex amp = s.amplitude(reg.layout().basis_index(target));
    EXPECT_NEAR(std::abs(amp), 1.0, 1e-10);
    EXPECT_NEAR(std::arg(amp), verify::wrap_phase(seq.global_phase), 1e-10);
    EXPECT_NEAR(s.level_populations("a")[0], 1.0, 1e-10);
    EXPECT_NEAR(leakage_probability(s, reg), 0.0, 1e-12);
}

TEST(PrepareTest, DoubleLoadReachesLevelTwo) {
    const auto reg = single_dual();
    auto s = ground_state(reg.layout_ptr());
    const auto seq = prepare_dual_rail_zero(reg, "D", "a");
    pulse::apply(s, seq.ops);
    pulse::apply(s, seq.ops);
    EXPECT_NEAR(s.level_populations("d0")[2], kDoublePrepLevel2, 1e-10);
}

TEST(PrepareTest, Errors) {
    const auto reg = hybrid_pair();
    EXPECT_THROW(prepare_dual_rail_zero(reg, "Q", "q2"), Error);
    EXPECT_THROW(prepare_dual_rail_zero(reg, "D", "m1"), Error);
}

TEST(MeasureDualRailTest, OneIsDeterministic) {
    const auto reg = single_dual();
    const auto s = reg.logical_basis_state(1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto m = measure_dual_rail(s, reg, "D", "a", seed);
        ASSERT_EQ(m.bit, 1);
        ASSERT_NEAR(m.probability_one, 1.0, 1e-12);
        ASSERT_NEAR(m.collapsed.level_populations("a")[0], 1.0, 1e-10);
        ASSERT_NEAR(fidelity(m.collapsed, s), 1.0, 1e-10);
    }
}

TEST(MeasureDualRailTest, ZeroIsDeterministic) {
    const auto reg = single_dual();
    const auto m = measure_dual_rail(reg.logical_basis_state(0), reg, "D", "a", 3);
    EXPECT_EQ(m.bit, 0);
    EXPECT_NEAR(m.probability_one, 0.0, 1e-12);
}

TEST(MeasureDualRailTest, BalancedStatistics) {
    const auto reg = single_dual();
    Eigen::VectorXcd v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const auto s = reg.embed(v);
    std::mt19937_64 rng(2024);
    int ones = 0;
    for (int k = 0; k < 10000; ++k) {
        ones += measure_dual_rail(s, reg, "D", "a", rng).bit;
    }
    EXPECT_LE(std::abs(ones - 5000), 150);
}

TEST(MeasureDualRailTest, RequiresGroundAncilla) {
    const auto reg = single_dual();
    auto s = reg.logical_basis_state(0);
    pulse::apply(s, pulse::carrier(kPi / 2.0, 0.0, "a"));
    try {
        measure_dual_rail(s, reg, "D", "a", 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kAncillaUnavailable);
    }
}

TEST(MeasureDualRailTest, LeavesOtherQubitUntouched) {
    std::mt19937_64 rng(5);
    const auto l = make_layout({"a"}, {"d0", "d1", "e0", "e1"});
    const auto reg = LogicalRegister::define(
        l, {LogicalEntry::dual_rail("A", "d0", "d1"), LogicalEntry::dual_rail("B", "e0", "e1")}, {"a"});
    const Eigen::VectorXcd a = testing::random_vector(2, rng);
    const Eigen::VectorXcd b = testing::random_vector(2, rng);
    Eigen::VectorXcd v(4);
    v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    const auto s = reg.embed(v);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto m = measure_dual_rail(s, reg, "A", "a", seed);
        const auto rep = extract_logical_state(m.collapsed, reg);
        const Eigen::Vector2cd rest = rep.logical_amplitudes.segment(m.bit == 0 ? 0 : 2, 2);
        ASSERT_NEAR(std::norm(rest.dot(b)), 1.0, 1e-10);
        ASSERT_NEAR(m.collapsed.level_populations("a")[0], 1.0, 1e-10);
    }
}

TEST(MeasureDualRailTest, PrepGateMeasureRoundTrip) {
    const auto reg = single_dual();
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 3; ++trial) {
        const Eigen::Matrix2cd u = testing::random_unitary2(rng);
        auto s = ground_state(reg.layout_ptr());
        pulse::apply(s, prepare_dual_rail_zero(reg, "D", "a").ops);
        pulse::apply(s, compiler::compile_su2_dual(u, reg.entry("D"), std::string("a")).ops);
        const double p1 = std::norm(u(1, 0));
        const int shots = 10000;
        int ones = 0;
        for (int k = 0; k < shots; ++k) {
            ones += measure_dual_rail(s, reg, "D", "a", rng).bit;
        }
        const double sigma = std::sqrt(shots * p1 * (1.0 - p1));
        EXPECT_LE(std::abs(ones - shots * p1), 3.0 * sigma + 1e-9) << "p1=" << p1;
    }
}

TEST(ExtractTest, CodewordIsLogicalZero) {
    const auto reg = hybrid_pair();
    const std::vector<std::size_t> lv{0, 0, 1, 0};
    const auto rep = extract_logical_state(StateVector::basis(reg.layout_ptr(), lv), reg);
    EXPECT_NEAR(std::abs(rep.logical_amplitudes(0)), 1.0, 1e-15);
    EXPECT_NEAR(rep.leakage, 0.0, 1e-15);
}

TEST(ExtractTest, LostPhononIsFullLeakage) {
    const auto reg = hybrid_pair();
    const auto rep = extract_logical_state(ground_state(reg.layout_ptr()), reg);
    EXPECT_NEAR(rep.leakage, 1.0, 1e-15);
    EXPECT_NEAR(rep.logical_amplitudes.norm(), 0.0, 1e-15);
}

TEST(ExtractTest, SuperpositionHasNoLeakageAndKeepsNorm) {
    std::mt19937_64 rng(8);
    const auto reg = hybrid_pair();
    const Eigen::VectorXcd v = testing::random_vector(4, rng);
    const auto rep = extract_logical_state(reg.embed(v), reg);
    EXPECT_LE(rep.leakage, 1e-10);
    EXPECT_LT((rep.logical_amplitudes - v).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(rep.logical_amplitudes.squaredNorm() + rep.leakage, 1.0, 1e-9);
}

TEST(LeakageTest, Values) {
    const auto reg = single_dual();
    EXPECT_NEAR(leakage_probability(reg.logical_basis_state(1), reg), 0.0, 1e-12);
    Eigen::VectorXcd v = reg.logical_basis_state(0).amplitudes() / std::sqrt(2.0);
    v(0) += 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(leakage_probability(StateVector(reg.layout_ptr(), v), reg), 0.5, 1e-10);
    const auto lost = verify::inject_heating_error(reg.logical_basis_state(0), "d0", verify::HeatingKind::kLoss);
    EXPECT_NEAR(leakage_probability(lost, reg), 1.0, 1e-10);
    const auto gained = verify::inject_heating_error(reg.logical_basis_state(0), "d1", verify::HeatingKind::kGain);
    EXPECT_NEAR(leakage_probability(gained, reg), 1.0, 1e-10);
}

TEST(LeakageTest, AncillaExcitationCounts) {
    const auto reg = single_dual();
    auto s = reg.logical_basis_state(0);
    pulse::apply(s, pulse::carrier(kPi, 0.0, "a"));
    EXPECT_NEAR(leakage_probability(s, reg), 1.0, 1e-12);
    EXPECT_NEAR(excitation(s, "a"), 1.0, 1e-12);
    EXPECT_NEAR(excitation(s, "d0"), 1.0, 1e-12);
    EXPECT_NEAR(excitation(s, "d1"), 0.0, 1e-12);
}

} // namespace
} // namespace dualrail::encoding
