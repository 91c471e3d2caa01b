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
#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nearfocus;

namespace
{
    struct Workspace
    {
        std::filesystem::path dir = std::filesystem::temp_directory_path() / "nearfocus-cli-test";
        Workspace() { std::filesystem::remove_all(dir), std::filesystem::create_directories(dir); }
        ~Workspace() { std::filesystem::remove_all(dir); }

        std::string file(const std::string &name, const std::string &text) const
        {
            std::ofstream(dir / name) << text;
            return (dir / name).string();
        }
    };

    int run(Command c, const std::string &path, const std::filesystem::path &out, std::string *err_text = nullptr)
    {
        std::ostringstream o, e;
        const int code = cli::run(c, path, {out, std::nullopt, {}}, o, e);
        if (err_text)
            *err_text = e.str();
        return code;
    }

    const std::string small_map = R"({
  "id": "small",
  "frequency_hz": 28e9,
  "arrays": [{"rows": 8, "cols": 8, "spacing_wavelengths": 0.5}],
  "dfps": [[0, 0.4, 0]],
  "grid": {"origin": [0, 0.4, 0], "axes": [
    {"direction": [1, 0, 0], "start": -0.1, "stop": 0.1, "samples": 21},
    {"direction": [0, 1, 0], "start": -0.1, "stop": 0.1, "samples": 21}]}
})";
}

TEST_CASE("field-map writes data, metrics and a manifest")
{
    Workspace ws;
    const auto out = ws.dir / "out";
    CHECK(run(Command::FieldMap, ws.file("s.json", small_map), out) == cli::Success);
    CHECK(std::filesystem::exists(out / "field_8x8.csv"));
    CHECK(std::filesystem::exists(out / "weights_8x8.csv"));
    CHECK(std::filesystem::exists(out / "metrics.csv"));
    CHECK(std::filesystem::exists(out / "manifest.json"));
}

TEST_CASE("validation failures exit with 2")
{
    Workspace ws;
    std::string err;
    std::string dup = small_map;
    dup.replace(dup.find("[[0, 0.4, 0]]"), 13, "[[0, 0.4, 0],\n [0, 0.4, 0]]");
    CHECK(run(Command::FieldMap, ws.file("dup.json", dup), ws.dir / "o1", &err) == cli::ValidationError);
    CHECK(err.find("dup.json:6:") != std::string::npos);

    const std::string tiling = R"({"id": "t", "frequency_hz": 28e9,
 "arrays": [{"rows": 60, "cols": 60, "spacing_wavelengths": 0.5}],
 "dfps": [[0, 1, 0]], "adaptive": {"tiling": [7, 7]}})";
    CHECK(run(Command::Adaptive, ws.file("tile.json", tiling), ws.dir / "o2") == cli::ValidationError);

    const std::string spacing = R"({"id": "t", "frequency_hz": 28e9,
 "arrays": [{"rows": 4, "cols": 4, "spacing_wavelengths": 0.5}], "dfps": [[0, 1, -0.5]],
 "spacing_sweep": {"rows": 4, "cols": 4, "spacing_ratios": "0.5,1.0"}})";
    CHECK(run(Command::Tradeoffs, ws.file("sp.json", spacing), ws.dir / "o3") == cli::ValidationError);

    CHECK(run(Command::FieldMap, (ws.dir / "missing.json").string(), ws.dir / "o4") == cli::ValidationError);
    CHECK(run(Command::FieldMap, ws.file("empty.json", ""), ws.dir / "o5", &err) == cli::ValidationError);
    CHECK(err.find("'id'") != std::string::npos);
}

TEST_CASE("oracle scenario passes and reports exit 0")
{
    Workspace ws;
    CHECK(run(Command::Adaptive, "adaptive-oracle-2x2", ws.dir / "oracle") == cli::Success);
    CHECK(std::filesystem::exists(ws.dir / "oracle" / "epochs_seed1.csv"));
}

TEST_CASE("builtin names resolve to the scenario directory")
{
    CHECK(cli::resolve_scenario("fig2").filename() == "fig2.json");
    CHECK(std::filesystem::exists(cli::resolve_scenario("fig2")));
}
