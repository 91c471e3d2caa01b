// SPDX-License-Identifier: Apache-2.0
//
// nearfocus: near-field spot beamfocusing simulation and optimization toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "nearfocus/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    using namespace nearfocus;

    CLI::App app{"nearfocus: near-field spot beamfocusing simulation and optimization"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;

    struct Sub
    {
        const char *name;
        const char *help;
        Command command;
    };
    const Sub subs[] = {
        {"field-map", "Power-density maps, weights and spot metrics", Command::FieldMap},
        {"tradeoffs", "Spacing and array-size trade-off profiles", Command::Tradeoffs},
        {"security", "SINR maps, secure masks and boundary contours", Command::Security},
        {"adaptive", "CSI-free sub-array power-feedback focusing", Command::Adaptive},
    };
    std::vector<std::pair<CLI::App *, Command>> commands;
    for (const auto &s : subs)
    {
        auto *sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--scenario", scenario, "Scenario JSON file or builtin name (e.g. fig1b)")->required();
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->add_option("--seed", seed, "Override the scenario seeds with a single seed");
        sub->add_option("--threads", threads, "OpenMP threads (fallback: NEARFOCUS_THREADS)");
        commands.emplace_back(sub, s.command);
    }
    auto *verify = app.add_subcommand("verify", "Run the acceptance suite and print a pass/fail table");
    verify->add_option("--threads", threads, "OpenMP threads (fallback: NEARFOCUS_THREADS)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::ValidationError;
    }

    cli::set_threads(threads);
    if (*verify)
        return cli::verify(std::cout);
    for (const auto &[sub, command] : commands)
        if (*sub)
            return cli::run(command, scenario, {out_dir, seed, {}}, std::cout, std::cerr);
    return cli::ValidationError;
}
