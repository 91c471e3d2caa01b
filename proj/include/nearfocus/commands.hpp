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

#ifndef NEARFOCUS_COMMANDS_HPP
#define NEARFOCUS_COMMANDS_HPP

#include "nearfocus/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace nearfocus::cli
{
    enum ExitCode : int
    {
        Success = 0,
        AcceptanceFailure = 1,
        ValidationError = 2,
        NumericalError = 3
    };

    struct RunOptions
    {
        std::filesystem::path out_dir;
        std::optional<std::uint64_t> seed; // overrides scenario seeds
        std::string input_hash;
    };

    int field_map(const Scenario &sc, const RunOptions &opt, std::ostream &log);
    int tradeoffs(const Scenario &sc, const RunOptions &opt, std::ostream &log);
    int security(const Scenario &sc, const RunOptions &opt, std::ostream &log);
    int adaptive(const Scenario &sc, const RunOptions &opt, std::ostream &log);
    int verify(std::ostream &out);

    // Loads `name_or_path` (a file, or a builtin scenario name) for the given command and runs it,
    // mapping errors onto exit codes.
    int run(Command command, const std::string &name_or_path, const RunOptions &opt, std::ostream &out,
            std::ostream &err);

    // Resolves a builtin name such as "fig1b" to <scenario dir>/fig1b.json when it is not an existing file.
    std::filesystem::path resolve_scenario(const std::string &name_or_path);

    void set_threads(std::optional<int> threads);
}

#endif
