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

#include "dualrail/cli/circuit.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "dualrail/error.hpp"

namespace dualrail::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

constexpr std::array<GateSpec, 20> kGates = {{
    {"x", 0, false, 1, 0},     {"y", 0, false, 1, 0},    {"z", 0, false, 1, 0},      {"h", 0, false, 1, 0},
    {"s", 0, false, 1, 0},     {"sdg", 0, false, 1, 0},  {"t", 0, false, 1, 0},      {"tdg", 0, false, 1, 0},
    {"rx", 1, false, 1, 0},    {"ry", 1, false, 1, 0},   {"rz", 1, false, 1, 0},     {"u", 3, false, 1, 0},
    {"rzz", 1, false, 2, 0},   {"rxx", 1, false, 2, 0},  {"xx", 1, false, 2, 0},     {"cnot", 0, true, 1, 1},
    {"cx", 0, true, 1, 1},     {"cswap", 0, true, 1, 0}, {"kcnot", 0, true, 0, 1},   {"mc", 0, true, 0, 0},
}};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    std::string tok;
    while (is >> tok) {
        out.push_back(tok);
    }
    return out;
}

std::optional<double> parse_decimal(std::string_view s) {
    if (s.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    const auto *first = s.data();
    const auto *last = s.data() + s.size();
    if (*first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

template <typename T> std::optional<T> parse_unsigned(std::string_view s) {
    T v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::string join(const std::vector<std::string> &v, std::string_view sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += v[i];
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

enum class Section { kNone, kSystem, kRegisters, kAncillas, kProgram, kOptions };

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    ParseResult run() {
        std::istringstream is{std::string(text_)};
        std::string raw;
        std::size_t line = 0;
        while (std::getline(is, raw)) {
            ++line;
            const auto hash = raw.find('#');
            const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (content.empty()) {
                continue;
            }
            if (content.front() == '[') {
                header(content, line);
                continue;
            }
            switch (section_) {
            case Section::kNone:
                diag("E001", line, "", "content outside of a section");
                break;
            case Section::kProgram:
                gate_line(content, line);
                break;
            default:
                key_value(content, line);
                break;
            }
        }
        validate();
        ParseResult res;
        res.diagnostics = std::move(diags_);
        if (res.diagnostics.empty()) {
            res.document = std::move(doc_);
        }
        return res;
    }

  private:
    void diag(std::string code, std::size_t line, std::string field, std::string message) {
        diags_.push_back({std::move(code), line, std::move(field), std::move(message)});
    }

    void header(const std::string &content, std::size_t line) {
        static const std::map<std::string, Section> kSections = {{"[system]", Section::kSystem},
                                                                 {"[registers]", Section::kRegisters},
                                                                 {"[ancillas]", Section::kAncillas},
                                                                 {"[program]", Section::kProgram},
                                                                 {"[options]", Section::kOptions}};
        auto it = kSections.find(content);
        if (it == kSections.end()) {
            diag("E001", line, content, "unknown section header");
            section_ = Section::kNone;
            return;
        }
        if (!seen_sections_.insert(content).second) {
            diag("E001", line, content, "section appears twice");
        }
        section_ = it->second;
    }

    void key_value(const std::string &content, std::size_t line) {
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            diag("E001", line, "", "expected 'key = value'");
            return;
        }
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key.empty()) {
            diag("E001", line, "", "missing key before '='");
            return;
        }
        switch (section_) {
        case Section::kSystem:
            system_key(key, value, line);
            break;
        case Section::kRegisters: {
            auto toks = split_ws(value);
            if (toks.empty()) {
                diag("E001", line, "registers." + key, "missing register kind");
                return;
            }
            RegisterRecord r{key, toks.front(), {toks.begin() + 1, toks.end()}, line};
            doc_.registers.push_back(std::move(r));
            break;
        }
        case Section::kAncillas:
            if (key == "qubits") {
                doc_.ancillas.qubits = split_ws(value);
            } else if (key == "com_mode") {
                auto toks = split_ws(value);
                if (toks.size() != 1) {
                    diag("E005", line, "ancillas.com_mode", "expected exactly one mode id");
                } else {
                    doc_.ancillas.com_mode = toks.front();
                }
            } else {
                diag("E001", line, "ancillas." + key, "unknown key");
            }
            break;
        case Section::kOptions:
            option_key(key, value, line);
            break;
        default:
            break;
        }
    }

    void system_key(const std::string &key, const std::string &value, std::size_t line) {
        if (key == "qubits") {
            doc_.system.qubits = split_ws(value);
        } else if (key == "modes") {
            doc_.system.modes = split_ws(value);
        } else if (key == "cutoff") {
            auto v = parse_unsigned<std::size_t>(value);
            if (!v) {
                diag("E005", line, "system.cutoff", "cutoff must be a non-negative integer");
            } else {
                doc_.system.cutoff = *v;
                cutoff_line_ = line;
            }
        } else {
            diag("E001", line, "system." + key, "unknown key");
        }
    }

    void option_key(const std::string &key, const std::string &value, std::size_t line) {
        if (key == "seed") {
            auto v = parse_unsigned<std::uint64_t>(value);
            if (!v) {
                diag("E005", line, "options.seed", "seed must be a non-negative integer");
            } else {
                doc_.options.seed = v;
            }
        } else if (key == "shots") {
            auto v = parse_unsigned<std::size_t>(value);
            if (!v || *v == 0) {
                diag("E005", line, "options.shots", "shots must be a positive integer");
            } else {
                doc_.options.shots = v;
            }
        } else if (key == "tolerance") {
            auto v = parse_decimal(value);
            if (!v || *v <= 0.0) {
                diag("E005", line, "options.tolerance", "tolerance must be a positive number");
            } else {
                doc_.options.tolerance = v;
            }
        } else {
            diag("E001", line, "options." + key, "unknown key");
        }
    }

    void gate_line(const std::string &content, std::size_t line) {
        GateRecord g;
        g.line = line;
        std::size_t i = 0;
        while (i < content.size() && content[i] != '(' && content[i] != ' ' && content[i] != '\t') {
            ++i;
        }
        g.name = content.substr(0, i);
        std::string rest = content.substr(i);
        if (!rest.empty() && rest.front() == '(') {
            const auto close = rest.find(')');
            if (close == std::string::npos) {
                diag("E001", line, g.name, "unterminated parameter list");
                return;
            }
            const std::string inside = rest.substr(1, close - 1);
            std::size_t start = 0;
            while (true) {
                const auto comma = inside.find(',', start);
                const std::string tok = trim(std::string_view(inside).substr(start, comma - start));
                if (tok.empty()) {
                    diag("E001", line, g.name, "empty parameter");
                    return;
                }
                g.params.push_back(tok);
                if (comma == std::string::npos) {
                    break;
                }
                start = comma + 1;
            }
            rest = rest.substr(close + 1);
        }
        std::string spaced;
        for (std::size_t k = 0; k < rest.size(); ++k) {
            if (rest.compare(k, 2, "->") == 0) {
                spaced += " -> ";
                ++k;
            } else {
                spaced += rest[k];
            }
        }
        bool after = false;
        for (const auto &tok : split_ws(spaced)) {
            if (tok == "->") {
                if (after) {
                    diag("E001", line, g.name, "more than one '->'");
                    return;
                }
                after = true;
                g.arrow = true;
                continue;
            }
            (after ? g.targets : g.operands).push_back(tok);
        }
        doc_.program.push_back(std::move(g));
    }

    void validate() {
        const auto &sys = doc_.system;
        std::map<std::string, SubsystemKind> physical;
        for (const auto &q : sys.qubits) {
            if (!physical.emplace(q, SubsystemKind::kQubit).second) {
                diag("E005", 0, "system.qubits", "duplicate subsystem id '" + q + "'");
            }
        }
        for (const auto &m : sys.modes) {
            if (!physical.emplace(m, SubsystemKind::kMode).second) {
                diag("E005", 0, "system.modes", "duplicate subsystem id '" + m + "'");
            }
        }
        if (physical.empty()) {
            diag("E005", 0, "system", "the system declares no qubits or modes");
        }
        if (sys.cutoff < kMinModeDim) {
            diag("E005", cutoff_line_, "system.cutoff",
                 "cutoff must be at least " + std::to_string(kMinModeDim) + ", got " + std::to_string(sys.cutoff));
        }

        std::set<std::string> claimed;
        auto claim = [&](const std::string &id, SubsystemKind kind, std::size_t line, const std::string &field) {
            auto it = physical.find(id);
            if (it == physical.end()) {
                diag("E004", line, field, "unknown subsystem '" + id + "'");
                return;
            }
            if (it->second != kind) {
                diag("E005", line, field,
                     "subsystem '" + id + "' must be a " + (kind == SubsystemKind::kQubit ? "qubit" : "mode"));
                return;
            }
            if (!claimed.insert(id).second) {
                diag("E005", line, field, "subsystem '" + id + "' is assigned twice");
            }
        };
        std::set<std::string> logical;
        for (const auto &r : doc_.registers) {
            const std::string field = "registers." + r.id;
            if (!logical.insert(r.id).second) {
                diag("E005", r.line, field, "logical id declared twice");
            }
            auto kind = encoding::kind_from_name(r.kind);
            if (!kind) {
                diag("E005", r.line, field, "unknown register kind '" + r.kind + "'");
                continue;
            }
            const bool dual = *kind == encoding::LogicalKind::kDualRail || *kind == encoding::LogicalKind::kDualRailAux;
            const bool aux = *kind == encoding::LogicalKind::kDualRailAux || *kind == encoding::LogicalKind::kInternalAux;
            const std::size_t want = (dual ? 2 : 1) + (aux ? 1 : 0);
            if (r.physical.size() != want) {
                diag("E003", r.line, field,
                     r.kind + " needs " + std::to_string(want) + " physical ids, got " + std::to_string(r.physical.size()));
                continue;
            }
            for (std::size_t k = 0; k < r.physical.size(); ++k) {
                const bool is_mode = dual ? true : k > 0;
                claim(r.physical[k], is_mode ? SubsystemKind::kMode : SubsystemKind::kQubit, r.line, field);
            }
            kinds_[r.id] = *kind;
        }
        for (const auto &a : doc_.ancillas.qubits) {
            claim(a, SubsystemKind::kQubit, 0, "ancillas.qubits");
        }
        if (doc_.ancillas.com_mode) {
            claim(*doc_.ancillas.com_mode, SubsystemKind::kMode, 0, "ancillas.com_mode");
        }
        for (const auto &g : doc_.program) {
            validate_gate(g);
        }
    }

    bool is_dual(const std::string &id) const {
        auto it = kinds_.find(id);
        return it != kinds_.end() &&
               (it->second == encoding::LogicalKind::kDualRail || it->second == encoding::LogicalKind::kDualRailAux);
    }

    void validate_gate(const GateRecord &g) {
        auto spec = gate_spec(g.name);
        if (!spec) {
            diag("E002", g.line, g.name, "unknown gate '" + g.name + "'");
            return;
        }
        if (g.params.size() != spec->params) {
            diag("E003", g.line, g.name,
                 "expects " + std::to_string(spec->params) + " parameter(s), got " + std::to_string(g.params.size()));
        }
        for (const auto &p : g.params) {
            if (!parse_angle(p)) {
                diag("E005", g.line, g.name, "invalid angle '" + p + "'");
            }
        }
        if (spec->arrow != g.arrow) {
            diag("E003", g.line, g.name, spec->arrow ? "expects 'controls -> targets'" : "takes no '->'");
            return;
        }
        const bool is_mc = spec->name == "mc";
        const bool swap_like = spec->name == "cswap" || (is_mc && g.name == "mc[cswap]");
        bool arity_ok = true;
        if (spec->operands && g.operands.size() != spec->operands) {
            arity_ok = false;
        }
        if (spec->targets && g.targets.size() != spec->targets) {
            arity_ok = false;
        }
        if (spec->name == "kcnot" && g.operands.size() < 2) {
            arity_ok = false;
        }
        if (is_mc && g.operands.empty()) {
            arity_ok = false;
        }
        if (is_mc && g.name == "mc[cnot]" && g.targets.size() != 1) {
            arity_ok = false;
        }
        if (swap_like && (g.targets.empty() || g.targets.size() % 2 != 0)) {
            arity_ok = false;
        }
        if (!arity_ok) {
            diag("E003", g.line, g.name, "wrong number of operands");
            return;
        }
        std::set<std::string> used;
        std::vector<std::string> all = g.operands;
        all.insert(all.end(), g.targets.begin(), g.targets.end());
        bool refs_ok = true;
        for (const auto &id : all) {
            if (!kinds_.count(id)) {
                diag("E004", g.line, g.name, "unknown logical qubit '" + id + "'");
                refs_ok = false;
            } else if (!used.insert(id).second) {
                diag("E005", g.line, g.name, "logical qubit '" + id + "' used twice");
                refs_ok = false;
            }
        }
        if (!refs_ok) {
            return;
        }
        auto need = [&](const std::string &id, bool dual, const char *what) {
            if (is_dual(id) != dual) {
                diag("E005", g.line, g.name, "operand '" + id + "' must be " + what);
            }
        };
        const std::string_view n = spec->name;
        if (n == "rzz") {
            need(g.operands[0], true, "dual-rail");
            need(g.operands[1], true, "dual-rail");
        } else if (n == "rxx") {
            need(g.operands[0], false, "internal");
            need(g.operands[1], true, "dual-rail");
        } else if (n == "xx") {
            need(g.operands[0], false, "internal");
            need(g.operands[1], false, "internal");
        } else if (n == "cnot" || n == "cx") {
            if (is_dual(g.operands[0]) == is_dual(g.targets[0])) {
                diag("E005", g.line, g.name, "cnot needs one internal and one dual-rail operand");
            }
        } else if (n == "cswap") {
            need(g.operands[0], false, "internal");
            for (const auto &t : g.targets) {
                need(t, true, "dual-rail");
            }
        } else if (is_mc) {
            for (const auto &t : g.targets) {
                need(t, true, "dual-rail");
            }
        }
    }

    std::string_view text_;
    Section section_ = Section::kNone;
    std::set<std::string> seen_sections_;
    CircuitDocument doc_;
    std::vector<Diagnostic> diags_;
    std::map<std::string, encoding::LogicalKind> kinds_;
    std::size_t cutoff_line_ = 0;
};

Eigen::Matrix2cd named_matrix(const std::string &name, const std::vector<double> &p) {
    Eigen::Matrix2cd m;
    const double r = 1.0 / std::sqrt(2.0);
    if (name == "x") {
        m << 0, 1, 1, 0;
    } else if (name == "y") {
        m << 0, -kI, kI, 0;
    } else if (name == "z") {
        m << 1, 0, 0, -1;
    } else if (name == "h") {
        m << r, r, r, -r;
    } else if (name == "s") {
        m << 1, 0, 0, kI;
    } else if (name == "sdg") {
        m << 1, 0, 0, -kI;
    } else if (name == "t") {
        m << 1, 0, 0, std::exp(kI * kPi / 4.0);
    } else if (name == "tdg") {
        m << 1, 0, 0, std::exp(-kI * kPi / 4.0);
    } else if (name == "rx") {
        m << std::cos(p[0] / 2), -kI * std::sin(p[0] / 2), -kI * std::sin(p[0] / 2), std::cos(p[0] / 2);
    } else if (name == "ry") {
        m << std::cos(p[0] / 2), -std::sin(p[0] / 2), std::sin(p[0] / 2), std::cos(p[0] / 2);
    } else if (name == "rz") {
        m << std::exp(-kI * p[0] / 2.0), 0, 0, std::exp(kI * p[0] / 2.0);
    } else if (name == "u") {
        // Rz(φ)·Ry(θ)·Rz(λ) with (θ, φ, λ) = p.
        const double t = p[0];
        const double ph = p[1];
        const double la = p[2];
        m << std::exp(-kI * (ph + la) / 2.0) * std::cos(t / 2), -std::exp(-kI * (ph - la) / 2.0) * std::sin(t / 2),
            std::exp(kI * (ph - la) / 2.0) * std::sin(t / 2), std::exp(kI * (ph + la) / 2.0) * std::cos(t / 2);
    } else {
        fail(ErrorCode::kUnsupportedGate, "unknown single-qubit gate '" + name + "'");
    }
    return m;
}

} // namespace

std::optional<double> parse_angle(std::string_view token) {
    std::string_view s = token;
    double sign = 1.0;
    if (!s.empty() && s.front() == '-') {
        sign = -1.0;
        s.remove_prefix(1);
    }
    if (s.substr(0, 2) == "pi") {
        s.remove_prefix(2);
        if (s.empty()) {
            return sign * kPi;
        }
        const char op = s.front();
        s.remove_prefix(1);
        auto v = parse_decimal(s);
        if (!v || (op != '*' && op != '/') || (op == '/' && *v == 0.0)) {
            return std::nullopt;
        }
        return sign * (op == '*' ? kPi * *v : kPi / *v);
    }
    auto v = parse_decimal(s);
    if (!v || (!s.empty() && s.front() == '-')) {
        return std::nullopt;
    }
    return sign * *v;
}

std::optional<GateSpec> gate_spec(std::string_view name) {
    if (name == "mc[cnot]" || name == "mc[cswap]") {
        return kGates.back();
    }
    for (const auto &g : kGates) {
        if (g.name == name && g.name != "mc") {
            return g;
        }
    }
    return std::nullopt;
}

ParseResult parse_circuit(std::string_view text) { return Parser(text).run(); }

std::string serialize(const CircuitDocument &doc) {
    std::ostringstream os;
    os << "[system]\n";
    os << "qubits = " << join(doc.system.qubits) << "\n";
    os << "modes = " << join(doc.system.modes) << "\n";
    os << "cutoff = " << doc.system.cutoff << "\n\n";
    os << "[registers]\n";
    for (const auto &r : doc.registers) {
        os << r.id << " = " << r.kind;
        for (const auto &p : r.physical) {
            os << ' ' << p;
        }
        os << "\n";
    }
    os << "\n[ancillas]\n";
    os << "qubits = " << join(doc.ancillas.qubits) << "\n";
    if (doc.ancillas.com_mode) {
        os << "com_mode = " << *doc.ancillas.com_mode << "\n";
    }
    os << "\n[program]\n";
    for (const auto &g : doc.program) {
        os << g.name;
        if (!g.params.empty()) {
            os << '(' << join(g.params, ", ") << ')';
        }
        for (const auto &o : g.operands) {
            os << ' ' << o;
        }
        if (g.arrow) {
            os << " ->";
            for (const auto &t : g.targets) {
                os << ' ' << t;
            }
        }
        os << "\n";
    }
    const auto &o = doc.options;
    if (o.seed || o.shots || o.tolerance) {
        os << "\n[options]\n";
        if (o.seed) {
            os << "seed = " << *o.seed << "\n";
        }
        if (o.shots) {
            os << "shots = " << *o.shots << "\n";
        }
        if (o.tolerance) {
            os << "tolerance = " << format_double(*o.tolerance) << "\n";
        }
    }
    return os.str();
}

BuiltCircuit build(const CircuitDocument &doc, std::optional<std::size_t> cutoff) {
    const std::size_t d = cutoff.value_or(doc.system.cutoff);
    std::vector<SubsystemSpec> specs;
    for (const auto &q : doc.system.qubits) {
        specs.push_back(SubsystemSpec::qubit(q));
    }
    for (const auto &m : doc.system.modes) {
        specs.push_back(SubsystemSpec::mode(m, d));
    }
    LayoutPtr layout = HilbertLayout::make_shared(std::move(specs));
    std::vector<encoding::LogicalEntry> entries;
    for (const auto &r : doc.registers) {
        auto kind = encoding::kind_from_name(r.kind);
        if (!kind) {
            fail(ErrorCode::kInvalidRegister, "unknown register kind '" + r.kind + "'");
        }
        entries.push_back({r.id, *kind, r.physical});
    }
    auto reg = encoding::LogicalRegister::define(layout, std::move(entries), doc.ancillas.qubits, doc.ancillas.com_mode);

    std::vector<compiler::LogicalGate> gates;
    for (const auto &g : doc.program) {
        std::vector<double> p;
        for (const auto &tok : g.params) {
            auto v = parse_angle(tok);
            if (!v) {
                fail(ErrorCode::kInvalidArgument, "invalid angle '" + tok + "'");
            }
            p.push_back(*v);
        }
        using compiler::LogicalGate;
        const std::string &n = g.name;
        if (n == "rzz") {
            gates.push_back(LogicalGate::rzz(p.at(0), g.operands.at(0), g.operands.at(1)));
        } else if (n == "rxx") {
            gates.push_back(LogicalGate::rxx(p.at(0), g.operands.at(0), g.operands.at(1)));
        } else if (n == "xx") {
            gates.push_back(LogicalGate::native_xx(p.at(0), g.operands.at(0), g.operands.at(1)));
        } else if (n == "cnot" || n == "cx") {
            const bool dual_control = reg.entry(g.operands.at(0)).is_dual_rail();
            gates.push_back(LogicalGate::cnot(g.operands.at(0), g.targets.at(0),
                                              dual_control ? compiler::CnotDirection::kDualRailControlsInternal
                                                           : compiler::CnotDirection::kInternalControlsDualRail));
        } else if (n == "cswap") {
            gates.push_back(LogicalGate::cswap(g.operands.at(0), g.targets));
        } else if (n == "kcnot") {
            gates.push_back(LogicalGate::kcnot(g.operands, g.targets.at(0)));
        } else if (n == "mc[cnot]") {
            auto inner = LogicalGate::cnot("", g.targets.at(0), compiler::CnotDirection::kInternalControlsDualRail);
            inner.controls.clear();
            gates.push_back(LogicalGate::multi_controlled(g.operands, std::move(inner)));
        } else if (n == "mc[cswap]") {
            auto inner = LogicalGate::cswap("", g.targets);
            inner.controls.clear();
            gates.push_back(LogicalGate::multi_controlled(g.operands, std::move(inner)));
        } else {
            const std::string &target = g.operands.at(0);
            gates.push_back(LogicalGate::su2(named_matrix(n, p), target, reg.entry(target).is_dual_rail(), n));
        }
    }
    return {layout, std::move(reg), std::move(gates)};
}

namespace {

// Applies a 2^k × 2^k matrix on the listed logical bit positions (MSB = entry 0).
void apply_on_bits(Eigen::MatrixXcd &state_cols, const Eigen::MatrixXcd &m, const std::vector<std::size_t> &bits,
                   std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t k = bits.size();
    std::vector<std::size_t> masks(k);
    std::size_t all = 0;
    for (std::size_t j = 0; j < k; ++j) {
        masks[j] = std::size_t{1} << (n - 1 - bits[j]);
        all |= masks[j];
    }
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & all) {
            continue;
        }
        std::vector<std::size_t> idx(std::size_t{1} << k);
        for (std::size_t l = 0; l < idx.size(); ++l) {
            std::size_t i = base;
            for (std::size_t j = 0; j < k; ++j) {
                if ((l >> (k - 1 - j)) & 1U) {
                    i |= masks[j];
                }
            }
            idx[l] = i;
        }
        Eigen::MatrixXcd rows(static_cast<Eigen::Index>(idx.size()), state_cols.cols());
        for (std::size_t l = 0; l < idx.size(); ++l) {
            rows.row(static_cast<Eigen::Index>(l)) = state_cols.row(static_cast<Eigen::Index>(idx[l]));
        }
        const Eigen::MatrixXcd out = m * rows;
        for (std::size_t l = 0; l < idx.size(); ++l) {
            state_cols.row(static_cast<Eigen::Index>(idx[l])) = out.row(static_cast<Eigen::Index>(l));
        }
    }
}

// Basis permutation: `f` maps an input logical index to an output index.
template <typename F> void permute(Eigen::MatrixXcd &u, std::size_t n, F f) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(u.rows(), u.cols());
    for (std::size_t i = 0; i < dim; ++i) {
        out.row(static_cast<Eigen::Index>(f(i))) = u.row(static_cast<Eigen::Index>(i));
    }
    u = std::move(out);
}

} // namespace

Eigen::MatrixXcd ideal_unitary(const std::vector<compiler::LogicalGate> &gates, const encoding::LogicalRegister &reg) {
    const std::size_t n = reg.size();
    const auto dim = static_cast<Eigen::Index>(reg.logical_dim());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    auto mask = [&](const std::string &id) { return std::size_t{1} << (n - 1 - reg.index_of(id)); };
    auto all_set = [&](std::size_t i, const std::vector<std::string> &ids) {
        for (const auto &id : ids) {
            if (!(i & mask(id))) {
                return false;
            }
        }
        return true;
    };
    auto swap_targets = [&](std::size_t i, const std::vector<std::string> &targets) {
        const std::size_t half = targets.size() / 2;
        std::size_t out = i;
        for (std::size_t k = 0; k < half; ++k) {
            const std::size_t a = mask(targets[k]);
            const std::size_t b = mask(targets[half + k]);
            const bool va = (i & a) != 0;
            const bool vb = (i & b) != 0;
            out = (out & ~(a | b)) | (vb ? a : 0) | (va ? b : 0);
        }
        return out;
    };
    using compiler::GateKind;
    for (const auto &g : gates) {
        switch (g.kind) {
        case GateKind::kSu2Dual:
        case GateKind::kSu2Internal:
            apply_on_bits(u, g.matrix, {reg.index_of(g.targets[0])}, n);
            break;
        case GateKind::kRzz: {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
            m(0, 0) = m(3, 3) = std::exp(-kI * g.theta / 2.0);
            m(1, 1) = m(2, 2) = std::exp(kI * g.theta / 2.0);
            apply_on_bits(u, m, {reg.index_of(g.targets[0]), reg.index_of(g.targets[1])}, n);
            break;
        }
        case GateKind::kRxxHybrid:
        case GateKind::kNativeInternal2q: {
            Eigen::MatrixXcd m = std::cos(g.theta / 2) * Eigen::MatrixXcd::Identity(4, 4);
            m(0, 3) = m(3, 0) = m(1, 2) = m(2, 1) = -kI * std::sin(g.theta / 2);
            apply_on_bits(u, m, {reg.index_of(g.targets[0]), reg.index_of(g.targets[1])}, n);
            break;
        }
        case GateKind::kCnotHybrid:
        case GateKind::kKcnot:
            permute(u, n, [&](std::size_t i) { return all_set(i, g.controls) ? i ^ mask(g.targets[0]) : i; });
            break;
        case GateKind::kCswap:
            permute(u, n, [&](std::size_t i) { return all_set(i, g.controls) ? swap_targets(i, g.targets) : i; });
            break;
        case GateKind::kMultiControlled:
            if (g.inner->kind == GateKind::kCswap) {
                permute(u, n, [&](std::size_t i) { return all_set(i, g.controls) ? swap_targets(i, g.targets) : i; });
            } else {
                permute(u, n, [&](std::size_t i) { return all_set(i, g.controls) ? i ^ mask(g.targets[0]) : i; });
            }
            break;
        }
    }
    return u;
}

} // namespace dualrail::cli
