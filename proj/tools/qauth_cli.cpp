// Copyright 2026 The qauth Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qauth command-line front end.
//
//   qauth list
//   qauth run <config.json | builtin-name> [--output PATH] [--format csv|json] [--seed N]

#include <iostream>

#include <CLI11.hpp>

#include "qauth/scenario.hpp"

int main(int argc, char **argv) {
    using namespace qauth::cli;

    CLI::App app{"Classical and quantum message-authentication analyses"};
    app.require_subcommand(1);

    auto *list = app.add_subcommand("list", "List built-in scenarios");

    RunOptions opts;
    std::string format;
    std::uint64_t seed = 0;
    auto *run_cmd = app.add_subcommand("run", "Run a scenario file or a built-in scenario");
    run_cmd->add_option("config", opts.target, "Scenario JSON file or built-in name")->required();
    auto *output_opt = run_cmd->add_option("--output,-o", "Write the report to this path");
    auto *format_opt = run_cmd->add_option("--format,-f", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    auto *seed_opt = run_cmd->add_option("--seed", seed, "RNG seed, overrides the scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (list->parsed()) {
        for (const auto &s : list_scenarios()) {
            std::cout << s.name << "\t" << s.description << '\n';
        }
        return kExitOk;
    }

    if (*output_opt) {
        opts.output_path = output_opt->as<std::string>();
    }
    if (*format_opt) {
        opts.format = output_format_from(format);
    }
    if (*seed_opt) {
        opts.seed = seed;
    }
    return run(opts, std::cout, std::cerr);
}
