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

#include "dualrail/cli/commands.hpp"

#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "dualrail/cli/circuit.hpp"
#include "dualrail/compiler.hpp"
#include "dualrail/encoding.hpp"
#include "dualrail/error.hpp"
#include "dualrail/pulse.hpp"
#include "dualrail/state.hpp"
#include "dualrail/verify.hpp"

namespace dualrail::cli {

namespace {

using nlohmann::ordered_json;

double clean(double v) {
    const double r = std::round(v * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r;
}

ordered_json complex_json(Complex z) { return ordered_json::array({clean(z.real()), clean(z.imag())}); }

ordered_json op_json(std::size_t index, const pulse::PhysicalOp &op) {
    ordered_json j;
    j["index"] = index;
    j["kind"] = std::string(pulse::kind_name(op.kind));
    j["theta"] = clean(op.theta);
    j["phi"] = clean(op.phi);
    j["targets"] = op.targets;
    if (op.aux_flag) {
        j["aux"] = true;
    }
    return j;
}

ordered_json borrow_json(const compiler::AncillaBorrow &b) {
    return {{"gate", b.gate_index}, {"subsystem", b.subsystem}, {"role", b.role}};
}

std::string bits(std::size_t index, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t k = 0; k < n; ++k) {
        if ((index >> (n - 1 - k)) & 1U) {
            s[k] = '1';
        }
    }
    return s;
}

struct Settings {
    std::uint64_t seed = kDefaultSeed;
    std::size_t shots = kDefaultShots;
    double tolerance = kDefaultTolerance;
};

Settings resolve(const CircuitDocument *doc, const CommandFlags &flags) {
    Settings s;
    if (doc) {
        s.seed = doc->options.seed.value_or(s.seed);
        s.shots = doc->options.shots.value_or(s.shots);
        s.tolerance = doc->options.tolerance.value_or(s.tolerance);
    }
    s.seed = flags.seed.value_or(s.seed);
    s.shots = flags.shots.value_or(s.shots);
    s.tolerance = flags.tolerance.value_or(s.tolerance);
    return s;
}

ordered_json header(std::string_view command, const Settings &s, const CommandFlags &flags) {
    ordered_json j;
    j["schema"] = std::string(kReportSchema);
    j["command"] = std::string(command);
    ordered_json f;
    if (flags.cutoff) {
        f["cutoff"] = *flags.cutoff;
    }
    f["seed"] = s.seed;
    f["shots"] = s.shots;
    f["tolerance"] = s.tolerance;
    f["allow_midcircuit"] = flags.allow_midcircuit;
    j["flags"] = f;
    return j;
}

CommandResult finish(ordered_json j, int code) {
    j["exit_code"] = code;
    return {code, j.dump(2) + "\n"};
}

CommandResult error_result(ordered_json j, std::string_view kind, const std::string &message) {
    j["ok"] = false;
    j["error"] = {{"kind", std::string(kind)}, {"message", message}};
    return finish(std::move(j), kExitInvalidInput);
}

/// |0…0⟩ codeword: dual-rail entries loaded from vacuum through the first pool ancilla.
StateVector prepared_zero(const encoding::LogicalRegister &reg) {
    StateVector state = ground_state(reg.layout_ptr());
    for (const auto &e : reg.entries()) {
        if (!e.is_dual_rail()) {
            continue;
        }
        if (reg.ancilla_qubits().empty()) {
            fail(ErrorCode::kAncillaUnavailable, "preparing dual-rail '" + e.id + "' needs an ancilla qubit");
        }
        pulse::apply(state, encoding::prepare_dual_rail_zero(reg, e.id, reg.ancilla_qubits().front()).ops);
    }
    return state;
}

ordered_json compile_json(const compiler::CompiledProgram &program) {
    ordered_json j;
    ordered_json ops = ordered_json::array();
    for (std::size_t i = 0; i < program.ops.size(); ++i) {
        ops.push_back(op_json(i, program.ops[i]));
    }
    ordered_json gates = ordered_json::array();
    for (const auto &g : program.gates) {
        ordered_json gj;
        gj["gate"] = g.gate_index;
        gj["label"] = g.label;
        gj["ops"] = {g.op_begin, g.op_end};
        gj["global_phase"] = clean(g.global_phase);
        ordered_json borrowed = ordered_json::array();
        for (const auto &b : g.borrowed) {
            borrowed.push_back(borrow_json(b));
        }
        gj["borrowed"] = borrowed;
        if (!g.blocks.empty()) {
            ordered_json blocks = ordered_json::array();
            for (const auto &b : g.blocks) {
                blocks.push_back({{"label", b.label}, {"ops", {b.begin, b.end}}});
            }
            gj["blocks"] = blocks;
        }
        gates.push_back(gj);
    }
    std::map<std::string, std::size_t> counts;
    for (const auto &op : program.ops) {
        ++counts[std::string(pulse::kind_name(op.kind))];
    }
    ordered_json manifest = ordered_json::array();
    for (const auto &b : program.ancilla_manifest) {
        manifest.push_back(borrow_json(b));
    }
    j["op_count"] = program.ops.size();
    j["op_counts"] = counts;
    j["global_phase"] = clean(program.global_phase);
    j["ancilla_manifest"] = manifest;
    j["gates"] = gates;
    j["ops"] = ops;
    return j;
}

ordered_json equivalence_json(const verify::EquivalenceReport &r) {
    return {{"equivalent", r.equivalent},
            {"max_entry_error", r.max_entry_error},
            {"inferred_phase", clean(r.inferred_phase)},
            {"leakage_max", r.leakage_max}};
}

struct Check {
    ordered_json json;
    bool passed = false;
};

Check check_lowering(const std::vector<pulse::PhysicalOp> &ops, const std::vector<compiler::LogicalGate> &gates,
                     double ledger_phase, const encoding::LogicalRegister &reg, double tol) {
    Check c;
    const auto action = verify::logical_action(ops, reg);
    const auto ideal = ideal_unitary(gates, reg);
    const auto eq = verify::equivalent_up_to_phase(action.matrix, ideal, tol);
    const double expected = verify::wrap_phase(-ledger_phase);
    const double phase_error = std::abs(verify::wrap_phase(eq.inferred_phase - expected));
    const bool phase_ok = eq.equivalent && phase_error <= tol;
    const bool clean_ok = action.max_leakage <= tol && action.max_reference_deviation <= tol;
    c.passed = eq.equivalent && phase_ok && clean_ok;
    c.json = equivalence_json(eq);
    c.json["ledger_phase"] = clean(ledger_phase);
    c.json["phase_consistent"] = phase_ok;
    c.json["max_leakage"] = action.max_leakage;
    c.json["max_reference_deviation"] = action.max_reference_deviation;
    c.json["max_sentinel"] = action.max_sentinel;
    c.json["passed"] = c.passed;
    return c;
}

CommandResult do_compile(ordered_json j, const BuiltCircuit &built) {
    const auto program = compiler::compile_program(built.gates, built.reg);
    j["logical_qubits"] = built.reg.size();
    j["compile"] = compile_json(program);
    j["ok"] = true;
    return finish(std::move(j), kExitOk);
}

CommandResult do_run(ordered_json j, const BuiltCircuit &built, const Settings &s) {
    const auto &reg = built.reg;
    const auto program = compiler::compile_program(built.gates, reg);
    const auto report = compiler::execute(program, reg, prepared_zero(reg), {}, false);
    const double leakage = encoding::leakage_probability(report.final_state, reg);

    ordered_json health;
    health["healthy"] = report.healthy;
    if (!report.failure.empty()) {
        health["failure"] = report.failure;
    }
    health["max_ancilla_deviation"] = report.max_ancilla_deviation;
    health["max_sentinel"] = report.max_sentinel;
    health["max_com_excess"] = report.max_com_excess;
    health["max_norm_deviation"] = report.max_norm_deviation;
    health["leakage"] = leakage;

    std::vector<std::string> ids;
    for (const auto &e : reg.entries()) {
        ids.push_back(e.id);
    }
    const auto samples = verify::sample_counts(report.final_state, reg, ids, s.shots, s.seed);
    ordered_json counts = ordered_json::object();
    for (const auto &[k, v] : samples.counts) {
        counts[k] = v;
    }
    ordered_json probs = ordered_json::object();
    for (const auto &[k, v] : samples.probabilities) {
        probs[k] = clean(v);
    }

    j["logical_qubits"] = reg.size();
    j["measured"] = ids;
    j["counts"] = counts;
    j["probabilities"] = probs;
    j["leakage"] = clean(leakage);
    j["global_phase"] = clean(program.global_phase);
    if (reg.logical_dim() <= verify::kRestrictedBudget) {
        const auto logical = encoding::extract_logical_state(report.final_state, reg);
        ordered_json amps = ordered_json::object();
        for (Eigen::Index i = 0; i < logical.logical_amplitudes.size(); ++i) {
            amps[bits(static_cast<std::size_t>(i), reg.size())] = complex_json(logical.logical_amplitudes(i));
        }
        j["amplitudes"] = amps;
    }
    j["health"] = health;
    const bool ok = report.healthy && leakage <= s.tolerance;
    j["ok"] = ok;
    return finish(std::move(j), ok ? kExitOk : kExitNumericHealth);
}

CommandResult do_verify_suite(ordered_json j, const Settings &s) {
    const auto checks = verify::run_identity_suite(s.tolerance);
    ordered_json arr = ordered_json::array();
    bool all = true;
    for (const auto &c : checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["expected_phase"] = clean(c.expected_phase);
        cj["report"] = equivalence_json(c.report);
        cj["passed"] = c.passed;
        all = all && c.passed;
        arr.push_back(cj);
    }
    j["suite"] = "identity";
    j["checks"] = arr;
    j["ok"] = all;
    return finish(std::move(j), all ? kExitOk : kExitVerificationFailed);
}

CommandResult do_verify_document(ordered_json j, const BuiltCircuit &built, const Settings &s,
                                 const CommandFlags &flags) {
    const auto &reg = built.reg;
    if (reg.logical_dim() > verify::kRestrictedBudget) {
        return error_result(std::move(j), "dimension_budget",
                            "logical dimension " + std::to_string(reg.logical_dim()) + " exceeds the verify budget");
    }
    const auto program = compiler::compile_program(built.gates, reg);
    bool all = true;
    ordered_json per_gate = ordered_json::array();
    for (const auto &g : program.gates) {
        std::vector<pulse::PhysicalOp> ops(program.ops.begin() + static_cast<std::ptrdiff_t>(g.op_begin),
                                           program.ops.begin() + static_cast<std::ptrdiff_t>(g.op_end));
        auto c = check_lowering(ops, {built.gates[g.gate_index]}, g.global_phase, reg, s.tolerance);
        ordered_json gj;
        gj["gate"] = g.gate_index;
        gj["label"] = g.label;
        gj.update(c.json);
        per_gate.push_back(gj);
        all = all && c.passed;
    }
    auto whole = check_lowering(program.ops, built.gates, program.global_phase, reg, s.tolerance);
    all = all && whole.passed;
    j["gates"] = per_gate;
    j["program"] = whole.json;

    const auto run = compiler::execute(program, reg, prepared_zero(reg), {}, false);
    ordered_json health = {{"healthy", run.healthy},
                           {"max_ancilla_deviation", run.max_ancilla_deviation},
                           {"max_sentinel", run.max_sentinel},
                           {"max_com_excess", run.max_com_excess}};
    if (!run.failure.empty()) {
        health["failure"] = run.failure;
    }
    j["health"] = health;

    if (flags.allow_midcircuit) {
        ordered_json parity = ordered_json::array();
        for (const auto &e : reg.entries()) {
            if (!e.is_dual_rail() || reg.ancilla_qubits().empty()) {
                continue;
            }
            const auto r = verify::qnd_parity_check(run.final_state, reg.ancilla_qubits().front(), e.mode0(),
                                                    e.mode1());
            const bool ok = r.flag == verify::ParityFlag::kOdd;
            all = all && ok;
            parity.push_back({{"logical", e.id},
                              {"flag", std::string(verify::flag_name(r.flag))},
                              {"probability_odd", clean(r.probability_odd)},
                              {"passed", ok}});
        }
        j["parity_checks"] = parity;
    }

    j["ok"] = all && run.healthy;
    if (!run.healthy) {
        return finish(std::move(j), kExitNumericHealth);
    }
    return finish(std::move(j), all ? kExitOk : kExitVerificationFailed);
}

std::string_view error_kind(ErrorCode code) {
    switch (code) {
    case ErrorCode::kNumericHealth:
        return "numeric_health";
    case ErrorCode::kResourceExhausted:
        return "resource_exhausted";
    case ErrorCode::kDimensionBudget:
        return "dimension_budget";
    case ErrorCode::kAncillaUnavailable:
        return "ancilla_unavailable";
    default:
        return "validation";
    }
}

} // namespace

CommandResult run_command(std::string_view command, const std::optional<std::string> &document_text,
                          const CommandFlags &flags) {
    std::optional<CircuitDocument> doc;
    std::vector<Diagnostic> diagnostics;
    if (document_text) {
        auto parsed = parse_circuit(*document_text);
        doc = std::move(parsed.document);
        diagnostics = std::move(parsed.diagnostics);
    }
    const Settings s = resolve(doc ? &*doc : nullptr, flags);
    ordered_json j = header(command, s, flags);

    if (command != "compile" && command != "run" && command != "verify") {
        return error_result(std::move(j), "usage", "unknown command '" + std::string(command) + "'");
    }
    if (!diagnostics.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto &d : diagnostics) {
            arr.push_back({{"code", d.code}, {"line", d.line}, {"field", d.field}, {"message", d.message}});
        }
        j["diagnostics"] = arr;
        return error_result(std::move(j), "parse", diagnostics.front().code + ": " + diagnostics.front().message);
    }
    if (!doc) {
        if (command == "verify") {
            return do_verify_suite(std::move(j), s);
        }
        return error_result(std::move(j), "usage", "command '" + std::string(command) + "' needs a circuit document");
    }
    if (flags.cutoff && *flags.cutoff < kMinModeDim) {
        return error_result(std::move(j), "validation",
                            "cutoff must be at least " + std::to_string(kMinModeDim));
    }
    try {
        const BuiltCircuit built = build(*doc, flags.cutoff);
        if (command == "compile") {
            return do_compile(std::move(j), built);
        }
        if (command == "run") {
            return do_run(std::move(j), built, s);
        }
        return do_verify_document(std::move(j), built, s, flags);
    } catch (const Error &e) {
        const auto kind = error_kind(e.code());
        if (kind == "numeric_health") {
            j["ok"] = false;
            j["error"] = {{"kind", std::string(kind)}, {"message", e.what()}};
            return finish(std::move(j), kExitNumericHealth);
        }
        return error_result(std::move(j), kind, e.what());
    }
}

} // namespace dualrail::cli
