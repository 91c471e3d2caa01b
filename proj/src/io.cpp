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
#include "nearfocus/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <openssl/evp.h>

namespace nearfocus::io
{
    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

    std::string sha256_hex(std::string_view data)
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
            throw Error(ErrorCode::Io, "SHA-256 computation failed");
        static constexpr char hex[] = "0123456789abcdef";
        std::string out;
        out.reserve(2 * len);
        for (unsigned int i = 0; i < len; ++i)
        {
            out.push_back(hex[digest[i] >> 4]);
            out.push_back(hex[digest[i] & 0xf]);
        }
        return out;
    }

    void write_file_atomic(const std::filesystem::path &path, std::string_view content)
    {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
            if (!f)
                throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
            f.write(content.data(), static_cast<std::streamsize>(content.size()));
            if (!f)
                throw Error(ErrorCode::Io, "write to " + tmp.string() + " failed");
        }
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec)
            throw Error(ErrorCode::Io, "rename to " + path.string() + " failed: " + ec.message());
    }

    std::string field_map_csv(const FieldMap &map)
    {
        const bool plane = map.grid.kind() == GridKind::Plane;
        const auto &ax = map.grid.axes();
        std::string out = plane ? "axis1_m,axis2_m,power" : "axis1_m,power";
        if (map.per_stream_power.size() > 1)
            for (std::size_t m = 0; m < map.per_stream_power.size(); ++m)
                out += ",stream_" + std::to_string(m);
        out += '\n';
        for (std::size_t k = 0; k < map.power.size(); ++k)
        {
            if (plane)
            {
                const std::size_t n2 = ax[1].samples;
                out += format_number(ax[0].coordinate(k / n2)) + ',' + format_number(ax[1].coordinate(k % n2));
            }
            else
            {
                out += format_number(ax[0].coordinate(k));
            }
            out += ',' + format_number(map.power[k]);
            if (map.per_stream_power.size() > 1)
                for (const auto &s : map.per_stream_power)
                    out += ',' + format_number(s[k]);
            out += '\n';
        }
        return out;
    }

    std::string weights_csv(const BeamWeights &w)
    {
        std::string out = "element_index,real,imag,chain_index\n";
        for (std::size_t m = 0; m < w.per_chain.size(); ++m)
            for (std::size_t n = 0; n < w.per_chain[m].size(); ++n)
                out += std::to_string(n) + ',' + format_number(w.per_chain[m][n].real()) + ',' +
                       format_number(w.per_chain[m][n].imag()) + ',' + std::to_string(m) + '\n';
        return out;
    }

    std::string metrics_csv(const std::vector<MetricRow> &rows)
    {
        std::string out = "scenario_id,metric,value,unit\n";
        for (const auto &r : rows)
            out += r.scenario_id + ',' + r.metric + ',' + format_number(r.value) + ',' + r.unit + '\n';
        return out;
    }

    std::string polylines_csv(const std::vector<Polyline> &polys)
    {
        std::string out = "polyline_id,vertex_index,axis1_m,axis2_m\n";
        for (std::size_t p = 0; p < polys.size(); ++p)
            for (std::size_t v = 0; v < polys[p].vertices.size(); ++v)
                out += std::to_string(p) + ',' + std::to_string(v) + ',' +
                       format_number(polys[p].vertices[v][0]) + ',' + format_number(polys[p].vertices[v][1]) + '\n';
        return out;
    }

    std::string security_map_csv(const SecurityMap &map)
    {
        const auto &ax = map.grid.axes();
        const std::size_t n2 = ax[1].samples;
        std::string out = "axis1_m,axis2_m";
        for (std::size_t m = 0; m < map.sinr_db.size(); ++m)
            out += ",sinr_db_" + std::to_string(m);
        out += ",max_sinr_db,secure\n";
        for (std::size_t k = 0; k < map.max_sinr_db.size(); ++k)
        {
            out += format_number(ax[0].coordinate(k / n2)) + ',' + format_number(ax[1].coordinate(k % n2));
            for (const auto &s : map.sinr_db)
                out += ',' + format_number(s[k]);
            out += ',' + format_number(map.max_sinr_db[k]) + ',' + (map.secure[k] ? "1" : "0") + '\n';
        }
        return out;
    }

    std::string epoch_log_csv(const AdaptiveRun &run, double quantized_mrt_bound)
    {
        std::string out = "epoch,combined_power,quantized_mrt_bound\n";
        for (const auto &rec : run.log)
            out += std::to_string(rec.epoch) + ',' + format_number(rec.combined_power) + ',' +
                   format_number(quantized_mrt_bound) + '\n';
        return out;
    }

    RunRecorder::RunRecorder(std::filesystem::path out_dir, nlohmann::ordered_json scenario, std::string input_hash)
        : dir_(std::move(out_dir)), scenario_(std::move(scenario)), input_hash_(std::move(input_hash))
    {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec)
            throw Error(ErrorCode::Io, "cannot create output directory " + dir_.string() + ": " + ec.message());
    }

    void RunRecorder::write(const std::string &name, const std::string &content)
    {
        write_file_atomic(dir_ / name, content);
        outputs_.push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
    }

    void RunRecorder::finish(double wall_clock_s)
    {
        nlohmann::ordered_json manifest;
        manifest["tool"] = "nearfocus";
        manifest["tool_version"] = tool_version;
        manifest["input_sha256"] = input_hash_;
        manifest["scenario"] = scenario_;
        manifest["outputs"] = outputs_;
        for (auto it = extra_.begin(); it != extra_.end(); ++it)
            manifest[it.key()] = it.value();
        manifest["wall_clock_s"] = wall_clock_s;
        write_file_atomic(dir_ / "manifest.json", manifest.dump(2) + "\n");
    }
}
