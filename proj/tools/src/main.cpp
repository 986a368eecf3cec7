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

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dualrail/cli/commands.hpp"

namespace {

std::optional<std::string> read_text(const std::string &path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"dualrail: compile, simulate and verify dual-rail trapped-ion circuits"};
    app.require_subcommand(1);

    dualrail::cli::CommandFlags flags;
    std::string document;
    std::string report_path;

    auto add_common = [&](CLI::App *sub, bool document_required) {
        auto *opt = sub->add_option("document", document, "Circuit document path ('-' for stdin)");
        if (document_required) {
            opt->required();
        }
        sub->add_option("--cutoff", flags.cutoff, "Fock cutoff override (>= 3)");
        sub->add_option("--seed", flags.seed, "Sampling seed");
        sub->add_option("--shots", flags.shots, "Number of sampled shots")->check(CLI::PositiveNumber);
        sub->add_option("--tol", flags.tolerance, "Numerical tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--report", report_path, "Also write the JSON report to this path");
        sub->add_flag("--allow-midcircuit", flags.allow_midcircuit,
                      "Permit readout-conditioned parity checks during verify");
    };
    add_common(app.add_subcommand("compile", "Lower a circuit to physical pulses"), true);
    add_common(app.add_subcommand("run", "Simulate a circuit and sample logical readout"), true);
    add_common(app.add_subcommand("verify", "Check compiled gates against their logical unitaries"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dualrail::cli::kExitInvalidInput;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    std::optional<std::string> text;
    if (!document.empty()) {
        text = read_text(document);
        if (!text) {
            std::cerr << "dualrail: cannot read '" << document << "'\n";
            return dualrail::cli::kExitInvalidInput;
        }
    }

    const auto result = dualrail::cli::run_command(command, text, flags);
    std::cout << result.report;
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out) {
            std::cerr << "dualrail: cannot write '" << report_path << "'\n";
            return dualrail::cli::kExitInvalidInput;
        }
        out << result.report;
    }
    return result.exit_code;
}
