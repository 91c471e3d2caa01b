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

#ifndef NEARFOCUS_SCENARIO_HPP
#define NEARFOCUS_SCENARIO_HPP

#include "nearfocus/adaptive.hpp"
#include "nearfocus/field.hpp"
#include "nearfocus/metrics.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace nearfocus
{
    struct ArraySpec
    {
        std::size_t rows = 1, cols = 1;
        double spacing_wavelengths = 0.5;
        Point3 center{};
        ArrayPlane plane = ArrayPlane::XZ;

        UniformPlanarArray build(double wavelength_m) const;
    };

    struct SpacingSweep
    {
        std::size_t rows = 60, cols = 60;
        std::vector<double> spacing_ratios;
        ProfileConfig profile;
    };

    struct SizeSweep
    {
        double spacing_ratio = 0.5;
        std::vector<std::size_t> sides;
        ProfileConfig profile;
    };

    struct AdaptiveSpec
    {
        std::size_t tile_rows = 1, tile_cols = 1;
        unsigned phase_bits = 4;
        std::size_t tile_budget = 0;
        std::size_t max_epochs = 50;
        InitMode init = InitMode::Random;
        double csi_noise_rad = 0.0;
        std::vector<std::uint64_t> seeds{1};
        std::optional<Point3> warm_start_offset; // warm start from a run solved at dfp + offset
        bool oracle = false;                     // brute-force check, small arrays only
    };

    struct Scenario
    {
        std::string id;
        std::string source; // file name used in diagnostics
        double wavelength_m = 0.0;
        GainModel gain = GainModel::InverseDistance;
        Normalization normalization = Normalization::PeakOne;
        std::vector<ArraySpec> arrays;
        std::vector<Point3> dfps;
        std::optional<SamplingGrid> grid;
        std::optional<SamplingGrid> bfr_grid;
        double eta = 0.9;
        double peak_threshold = 0.5;
        std::optional<SpacingSweep> spacing_sweep;
        std::optional<SizeSweep> size_sweep;
        double noise_power = 1.0;
        double target_snr_db = 10.0;
        double threshold_db = 5.0;
        std::optional<AdaptiveSpec> adaptive;
        nlohmann::ordered_json raw;
    };

    // Maps JSON-pointer paths ("/arrays/0/rows") to 1-based source lines.
    class JsonLineIndex
    {
    public:
        explicit JsonLineIndex(std::string_view text);
        std::size_t line_of(const std::string &pointer) const;

    private:
        std::map<std::string, std::size_t> lines_;
    };

    enum class Command
    {
        FieldMap,
        Tradeoffs,
        Security,
        Adaptive
    };

    // Parses and validates every field the command needs. Throws Error(Validation, "<source>:<line>: ...").
    Scenario parse_scenario(std::string_view text, const std::string &source, Command command);
    Scenario load_scenario(const std::filesystem::path &path, Command command);

    std::string to_string(GainModel gain);
}

#endif
