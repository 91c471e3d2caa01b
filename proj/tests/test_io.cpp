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

#include "nearfocus/io.hpp"
#include "support.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nearfocus;

namespace
{
    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    std::string first_line(const std::string &s) { return s.substr(0, s.find('\n')); }
}

TEST_CASE("number formatting")
{
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333");
    CHECK(io::format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(io::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(io::format_number(std::nan("")) == "nan");
}

TEST_CASE("sha256 test vectors")
{
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("csv headers")
{
    const auto plane = SamplingGrid::plane({}, test::axis({1, 0, 0}, 0, 1, 3), test::axis({0, 1, 0}, 0, 1, 3));
    FieldMap m{plane, std::vector<double>(9, 1.0), {std::vector<double>(9, 0.5), std::vector<double>(9, 0.5)},
               Normalization::Raw};
    const auto csv = io::field_map_csv(m);
    CHECK(first_line(csv) == "axis1_m,axis2_m,power,stream_0,stream_1");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);

    const auto line = SamplingGrid::line({}, test::axis({1, 0, 0}, 0, 1, 4));
    FieldMap l{line, std::vector<double>(4, 1.0), {}, Normalization::Raw};
    CHECK(first_line(io::field_map_csv(l)) == "axis1_m,power");

    BeamWeights w{{{1, 0}, {0, 1}}, {{{1, 0}, {0, 1}}}, std::nullopt};
    CHECK(first_line(io::weights_csv(w)) == "element_index,real,imag,chain_index");
    CHECK(first_line(io::metrics_csv({{"s", "m", 1.0, "m"}})) == "scenario_id,metric,value,unit");
    CHECK(io::metrics_csv({{"s", "m", 1.5, "m"}}) == "scenario_id,metric,value,unit\ns,m,1.5,m\n");
    CHECK(first_line(io::polylines_csv({})) == "polyline_id,vertex_index,axis1_m,axis2_m");
}

TEST_CASE("run recorder writes a manifest with checksums")
{
    const auto dir = std::filesystem::temp_directory_path() / "nearfocus-io-test";
    std::filesystem::remove_all(dir);
    io::RunRecorder rec(dir, nlohmann::ordered_json{{"id", "t"}}, io::sha256_hex("input"));
    rec.write("a.csv", "x\n1\n");
    rec.extra()["seeds"] = {1, 2};
    rec.finish(0.25);
    CHECK(slurp(dir / "a.csv") == "x\n1\n");
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["input_sha256"] == io::sha256_hex("input"));
    CHECK(manifest["tool_version"] == io::tool_version);
    REQUIRE(manifest["outputs"].size() == 1);
    CHECK(manifest["outputs"][0]["file"] == "a.csv");
    CHECK(manifest["outputs"][0]["sha256"] == io::sha256_hex("x\n1\n"));
    CHECK(manifest["outputs"][0]["bytes"] == 4);
    std::filesystem::remove_all(dir);
}
