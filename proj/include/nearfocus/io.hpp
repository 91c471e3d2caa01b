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

#ifndef NEARFOCUS_IO_HPP
#define NEARFOCUS_IO_HPP

#include "nearfocus/adaptive.hpp"
#include "nearfocus/contour.hpp"
#include "nearfocus/field.hpp"
#include "nearfocus/security.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace nearfocus::io
{
    // 9 significant digits, locale-independent.
    std::string format_number(double v);

    std::string sha256_hex(std::string_view data);

    // Writes to a sibling temporary file, then renames over the target.
    void write_file_atomic(const std::filesystem::path &path, std::string_view content);

    struct MetricRow
    {
        std::string scenario_id, metric;
        double value = 0.0;
        std::string unit;
    };

    // header: axis1_m[,axis2_m],power[,stream_0,...]
    std::string field_map_csv(const FieldMap &map);
    // header: element_index,real,imag,chain_index
    std::string weights_csv(const BeamWeights &w);
    // header: scenario_id,metric,value,unit
    std::string metrics_csv(const std::vector<MetricRow> &rows);
    // header: polyline_id,vertex_index,axis1_m,axis2_m
    std::string polylines_csv(const std::vector<Polyline> &polys);
    // header: axis1_m,axis2_m,sinr_db_0,...,max_sinr_db,secure
    std::string security_map_csv(const SecurityMap &map);
    // header: epoch,combined_power,quantized_mrt_bound
    std::string epoch_log_csv(const AdaptiveRun &run, double quantized_mrt_bound);

    // Collects output files and writes manifest.json last.
    class RunRecorder
    {
    public:
        RunRecorder(std::filesystem::path out_dir, nlohmann::ordered_json scenario, std::string input_hash);

        void write(const std::string &name, const std::string &content);
        nlohmann::ordered_json &extra() { return extra_; }
        void finish(double wall_clock_s);

        const std::filesystem::path &directory() const { return dir_; }

    private:
        std::filesystem::path dir_;
        nlohmann::ordered_json scenario_;
        std::string input_hash_;
        nlohmann::ordered_json outputs_ = nlohmann::ordered_json::array();
        nlohmann::ordered_json extra_ = nlohmann::ordered_json::object();
    };

    inline constexpr const char *tool_version = "0.3.0";
}

#endif
