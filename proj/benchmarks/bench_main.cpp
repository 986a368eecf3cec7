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

#include <benchmark/benchmark.h>

#include <random>

#include "dualrail/compiler.hpp"
#include "dualrail/operator.hpp"
#include "dualrail/pulse.hpp"
#include "dualrail/verify.hpp"

namespace {

using namespace dualrail;
using encoding::LogicalEntry;
using encoding::LogicalRegister;

LayoutPtr layout(const std::vector<std::string> &qubits, const std::vector<std::string> &modes, std::size_t cutoff) {
    std::vector<SubsystemSpec> specs;
    for (const auto &q : qubits) {
        specs.push_back(SubsystemSpec::qubit(q));
    }
    for (const auto &m : modes) {
        specs.push_back(SubsystemSpec::mode(m, cutoff));
    }
    return HilbertLayout::make_shared(specs);
}

void BM_ZbsApply(benchmark::State &state) {
    const auto cutoff = static_cast<std::size_t>(state.range(0));
    const auto lay = layout({"q", "a"}, {"m1", "m2", "m3", "m4"}, cutoff);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(lay->total_dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = Complex(g(rng), g(rng));
    }
    StateVector s(lay, v.normalized());
    const auto op = pulse::zbs(0.3, 0.1, "q", "m1", "m2");
    for (auto _ : state) {
        pulse::apply(s, op);
        benchmark::DoNotOptimize(s.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lay->total_dim()));
}
BENCHMARK(BM_ZbsApply)->Arg(3)->Arg(4)->Arg(6);

void BM_ExpHermitian(benchmark::State &state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n * n; ++i) {
        m(i % n, i / n) = Complex(g(rng), g(rng));
    }
    const OperatorMatrix h{{}, (m + m.adjoint()) / 2.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(exp_hermitian(h, 0.7));
    }
}
BENCHMARK(BM_ExpHermitian)->Arg(8)->Arg(32)->Arg(128);

LogicalRegister kcnot_register(std::size_t k) {
    std::vector<std::string> qubits{"t", "a"};
    std::vector<std::string> modes{"com", "bt"};
    std::vector<LogicalEntry> entries;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::string q = "c" + std::to_string(i);
        qubits.push_back(q);
        if (i == 1) {
            entries.push_back(LogicalEntry::internal(q, q));
        } else {
            modes.push_back("b" + std::to_string(i));
            entries.push_back(LogicalEntry::internal_aux(q, q, "b" + std::to_string(i)));
        }
    }
    entries.push_back(LogicalEntry::internal_aux("t", "t", "bt"));
    return LogicalRegister::define(layout(qubits, modes, 3), entries, {"a"}, "com");
}

std::vector<std::string> controls(std::size_t k) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= k; ++i) {
        out.push_back("c" + std::to_string(i));
    }
    return out;
}

void BM_KcnotCompile(benchmark::State &state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto reg = kcnot_register(k);
    const auto gate = compiler::LogicalGate::kcnot(controls(k), "t");
    for (auto _ : state) {
        benchmark::DoNotOptimize(compiler::compile_program({gate}, reg));
    }
}
BENCHMARK(BM_KcnotCompile)->DenseRange(2, 4);

void BM_KcnotExecute(benchmark::State &state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto reg = kcnot_register(k);
    const auto program = compiler::compile_program({compiler::LogicalGate::kcnot(controls(k), "t")}, reg);
    const auto initial = reg.logical_basis_state((std::size_t{1} << (k + 1)) - 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compiler::execute(program, reg, initial));
    }
}
BENCHMARK(BM_KcnotExecute)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_LogicalAction(benchmark::State &state) {
    const auto reg = LogicalRegister::define(
        layout({"q", "a"}, {"d0", "d1", "e0", "e1"}, 4),
        {LogicalEntry::internal("Q", "q"), LogicalEntry::dual_rail("A", "d0", "d1"), LogicalEntry::dual_rail("B", "e0", "e1")},
        {"a"});
    const auto l = compiler::compile_cswap(reg.entry("Q"), {reg.entry("A")}, {reg.entry("B")}, std::string("a"));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify::logical_action(l.ops, reg));
    }
}
BENCHMARK(BM_LogicalAction);

} // namespace
BENCHMARK_MAIN();
