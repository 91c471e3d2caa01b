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

#include "nearfocus/scenario.hpp"
#include "nearfocus/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace nearfocus
{
    using nlohmann::ordered_json;

    UniformPlanarArray ArraySpec::build(double wavelength_m) const
    {
        return UniformPlanarArray(rows, cols, spacing_wavelengths * wavelength_m, wavelength_m, center, plane);
    }

    std::string to_string(GainModel gain)
    {
        return gain == GainModel::Unit ? "unit" : "inverse-distance";
    }

    JsonLineIndex::JsonLineIndex(std::string_view text)
    {
        struct Frame
        {
            bool object;
            std::string path;
            std::size_t next_index = 0;
            std::string key;
            bool expect_key = true;
        };
        std::vector<Frame> stack;
        std::size_t line = 1;
        lines_[""] = 1;

        auto value_path = [&]() -> std::string {
            if (stack.empty())
                return "";
            auto &f = stack.back();
            if (f.object)
                return f.path + "/" + f.key;
            return f.path + "/" + std::to_string(f.next_index++);
        };
        auto note = [&](const std::string &p) { lines_.try_emplace(p, line); };

        for (std::size_t i = 0; i < text.size(); ++i)
        {
            const char c = text[i];
            if (c == '\n')
            {
                ++line;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == ',' || c == ':')
            {
                if (c == ',' && !stack.empty() && stack.back().object)
                    stack.back().expect_key = true;
                continue;
            }
            if (c == '}' || c == ']')
            {
                if (!stack.empty())
                    stack.pop_back();
                continue;
            }
            if (c == '"')
            {
                std::string s;
                for (++i; i < text.size() && text[i] != '"'; ++i)
                {
                    if (text[i] == '\\' && i + 1 < text.size())
                        ++i;
                    if (text[i] == '\n')
                        ++line;
                    s.push_back(text[i]);
                }
                if (!stack.empty() && stack.back().object && stack.back().expect_key)
                {
                    stack.back().key = s;
                    stack.back().expect_key = false;
                    note(stack.back().path + "/" + s);
                }
                else
                {
                    note(value_path());
                }
                continue;
            }
            const std::string p = value_path();
            note(p);
            if (c == '{' || c == '[')
            {
                stack.push_back({c == '{', p, 0, {}, true});
                continue;
            }
            // scalar literal: skip to its end
            while (i + 1 < text.size() && std::string_view(",]} \t\r\n").find(text[i + 1]) == std::string_view::npos)
                ++i;
        }
    }

    std::size_t JsonLineIndex::line_of(const std::string &pointer) const
    {
        std::string p = pointer;
        while (true)
        {
            if (auto it = lines_.find(p); it != lines_.end())
                return it->second;
            const auto cut = p.rfind('/');
            if (cut == std::string::npos)
                return 1;
            p = p.substr(0, cut);
        }
    }

    namespace
    {
        class Reader
        {
        public:
            Reader(const JsonLineIndex &index, std::string source) : index_(index), source_(std::move(source)) {}

            [[noreturn]] void fail(const std::string &ptr, const std::string &msg) const
            {
                throw Error(ErrorCode::Validation,
                            source_ + ":" + std::to_string(index_.line_of(ptr)) + ": " + msg);
            }

            static std::string field_name(const std::string &ptr)
            {
                std::string out;
                for (char c : ptr.substr(ptr.empty() ? 0 : 1))
                    out.push_back(c == '/' ? '.' : c);
                return out.empty() ? "<root>" : out;
            }

            const ordered_json &require(const ordered_json &obj, const std::string &ptr, const std::string &key) const
            {
                if (!obj.is_object())
                    fail(ptr, "field '" + field_name(ptr) + "' must be an object");
                if (!obj.contains(key))
                    fail(ptr, "missing required field '" + field_name(ptr + "/" + key) + "'");
                return obj.at(key);
            }

            double number(const ordered_json &v, const std::string &ptr) const
            {
                if (!v.is_number())
                    fail(ptr, "field '" + field_name(ptr) + "' must be a number");
                const double d = v.get<double>();
                if (!std::isfinite(d))
                    fail(ptr, "field '" + field_name(ptr) + "' must be finite");
                return d;
            }

            double positive(const ordered_json &v, const std::string &ptr) const
            {
                const double d = number(v, ptr);
                if (!(d > 0.0))
                    fail(ptr, "field '" + field_name(ptr) + "' must be positive");
                return d;
            }

            std::size_t count(const ordered_json &v, const std::string &ptr, std::size_t min_value) const
            {
                if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value))
                    fail(ptr, "field '" + field_name(ptr) + "' must be an integer >= " + std::to_string(min_value));
                return static_cast<std::size_t>(v.get<long long>());
            }

            std::string text(const ordered_json &v, const std::string &ptr) const
            {
                if (!v.is_string())
                    fail(ptr, "field '" + field_name(ptr) + "' must be a string");
                return v.get<std::string>();
            }

            Point3 point(const ordered_json &v, const std::string &ptr) const
            {
                if (!v.is_array() || v.size() != 3)
                    fail(ptr, "field '" + field_name(ptr) + "' must be an [x, y, z] array");
                return {number(v[0], ptr + "/0"), number(v[1], ptr + "/1"), number(v[2], ptr + "/2")};
            }

            const ordered_json &list(const ordered_json &v, const std::string &ptr, std::size_t min_size) const
            {
                if (!v.is_array() || v.size() < min_size)
                    fail(ptr, "field '" + field_name(ptr) + "' must be a list with at least " +
                                  std::to_string(min_size) + " entr" + (min_size == 1 ? "y" : "ies"));
                return v;
            }

            ArraySpec array(const ordered_json &v, const std::string &ptr) const
            {
                ArraySpec a;
                a.rows = count(require(v, ptr, "rows"), ptr + "/rows", 1);
                a.cols = count(require(v, ptr, "cols"), ptr + "/cols", 1);
                a.spacing_wavelengths = positive(require(v, ptr, "spacing_wavelengths"), ptr + "/spacing_wavelengths");
                if (v.contains("center"))
                    a.center = point(v["center"], ptr + "/center");
                if (v.contains("plane"))
                {
                    const auto s = text(v["plane"], ptr + "/plane");
                    if (s == "xz") a.plane = ArrayPlane::XZ;
                    else if (s == "xy") a.plane = ArrayPlane::XY;
                    else if (s == "yz") a.plane = ArrayPlane::YZ;
                    else fail(ptr + "/plane", "field '" + field_name(ptr + "/plane") + "' must be xz, xy or yz");
                }
                return a;
            }

            GridAxis axis(const ordered_json &v, const std::string &ptr) const
            {
                GridAxis a;
                Point3 dir = point(require(v, ptr, "direction"), ptr + "/direction");
                if (!(dir.norm() > 0.0))
                    fail(ptr + "/direction", "field '" + field_name(ptr + "/direction") + "' must be nonzero");
                a.direction = dir * (1.0 / dir.norm());
                a.start = number(require(v, ptr, "start"), ptr + "/start");
                a.stop = number(require(v, ptr, "stop"), ptr + "/stop");
                if (!(a.stop > a.start))
                    fail(ptr + "/stop", "field '" + field_name(ptr + "/stop") + "' must exceed start");
                a.samples = count(require(v, ptr, "samples"), ptr + "/samples", 2);
                return a;
            }

            SamplingGrid grid(const ordered_json &v, const std::string &ptr, bool need_plane) const
            {
                const Point3 origin = point(require(v, ptr, "origin"), ptr + "/origin");
                const auto &axes = list(require(v, ptr, "axes"), ptr + "/axes", 1);
                if (axes.size() > 2)
                    fail(ptr + "/axes", "field '" + field_name(ptr + "/axes") + "' holds at most two axes");
                if (need_plane && axes.size() != 2)
                    fail(ptr + "/axes", "field '" + field_name(ptr + "/axes") + "' must hold two axes (plane grid)");
                const auto a1 = axis(axes[0], ptr + "/axes/0");
                if (axes.size() == 1)
                    return SamplingGrid::line(origin, a1);
                const auto a2 = axis(axes[1], ptr + "/axes/1");
                if (std::abs(a1.direction.dot(a2.direction)) > 1e-12)
                    fail(ptr + "/axes", "field '" + field_name(ptr + "/axes") + "' directions must be orthogonal");
                return SamplingGrid::plane(origin, a1, a2);
            }

            ProfileConfig profile(const ordered_json &v, const std::string &ptr) const
            {
                ProfileConfig p;
                if (v.contains("mode"))
                {
                    const auto s = text(v["mode"], ptr + "/mode");
                    if (s == "axis-line") p.mode = ProfileMode::AxisLine;
                    else if (s == "radial") p.mode = ProfileMode::Radial;
                    else fail(ptr + "/mode", "field '" + field_name(ptr + "/mode") + "' must be axis-line or radial");
                }
                if (v.contains("axis"))
                {
                    p.axis = point(v["axis"], ptr + "/axis");
                    if (!(p.axis.norm() > 0.0))
                        fail(ptr + "/axis", "field '" + field_name(ptr + "/axis") + "' must be nonzero");
                }
                if (v.contains("start")) p.start = number(v["start"], ptr + "/start");
                if (v.contains("stop")) p.stop = number(v["stop"], ptr + "/stop");
                if (v.contains("samples")) p.samples = count(v["samples"], ptr + "/samples", 5);
                if (!(p.stop > p.start))
                    fail(ptr + "/stop", "field '" + field_name(ptr + "/stop") + "' must exceed start");
                return p;
            }

        private:
            const JsonLineIndex &index_;
            std::string source_;
        };

        std::size_t line_of_byte(std::string_view text, std::size_t byte)
        {
            std::size_t line = 1;
            for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
                line += text[i] == '\n' ? 1 : 0;
            return line;
        }
    }

    Scenario parse_scenario(std::string_view text, const std::string &source, Command command)
    {
        const bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
        ordered_json doc;
        try
        {
            doc = blank ? ordered_json::object() : ordered_json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw Error(ErrorCode::Validation,
                        source + ":" + std::to_string(line_of_byte(text, e.byte)) + ": malformed JSON: " + e.what());
        }
        const JsonLineIndex index(text);
        const Reader r(index, source);
        if (!doc.is_object())
            r.fail("", "scenario must be a JSON object");

        Scenario sc;
        sc.source = source;
        sc.raw = doc;
        sc.id = r.text(r.require(doc, "", "id"), "/id");
        if (sc.id.empty() || sc.id.find_first_of("/\\,") != std::string::npos)
            r.fail("/id", "field 'id' must be a non-empty name without '/', '\\' or ','");

        if (doc.contains("wavelength_m"))
            sc.wavelength_m = r.positive(doc["wavelength_m"], "/wavelength_m");
        else
            sc.wavelength_m = wavelength_for(r.positive(r.require(doc, "", "frequency_hz"), "/frequency_hz"));

        if (doc.contains("gain_model"))
        {
            const auto g = r.text(doc["gain_model"], "/gain_model");
            if (g == "unit") sc.gain = GainModel::Unit;
            else if (g == "inverse-distance") sc.gain = GainModel::InverseDistance;
            else r.fail("/gain_model", "field 'gain_model' must be unit or inverse-distance");
        }
        if (doc.contains("normalization"))
        {
            const auto n = r.text(doc["normalization"], "/normalization");
            if (n == "raw") sc.normalization = Normalization::Raw;
            else if (n == "peak-one") sc.normalization = Normalization::PeakOne;
            else r.fail("/normalization", "field 'normalization' must be raw or peak-one");
        }

        auto read_arrays = [&](std::size_t min_count) {
            const auto &arr = r.list(r.require(doc, "", "arrays"), "/arrays", min_count);
            for (std::size_t i = 0; i < arr.size(); ++i)
                sc.arrays.push_back(r.array(arr[i], "/arrays/" + std::to_string(i)));
        };
        auto read_dfps = [&](std::size_t min_count) {
            const auto &arr = r.list(r.require(doc, "", "dfps"), "/dfps", min_count);
            for (std::size_t i = 0; i < arr.size(); ++i)
                sc.dfps.push_back(r.point(arr[i], "/dfps/" + std::to_string(i)));
            for (std::size_t i = 0; i < sc.dfps.size(); ++i)
                for (std::size_t j = i + 1; j < sc.dfps.size(); ++j)
                    if (distance(sc.dfps[i], sc.dfps[j]) < 1e-6)
                        r.fail("/dfps/" + std::to_string(j),
                               "field 'dfps." + std::to_string(j) + "' coincides with dfps." + std::to_string(i));
        };

        if (doc.contains("eta"))
        {
            sc.eta = r.number(doc["eta"], "/eta");
            if (!(sc.eta > 0.0 && sc.eta < 1.0))
                r.fail("/eta", "field 'eta' must lie in (0, 1)");
        }
        if (doc.contains("peak_threshold"))
        {
            sc.peak_threshold = r.number(doc["peak_threshold"], "/peak_threshold");
            if (!(sc.peak_threshold > 0.0 && sc.peak_threshold <= 1.0))
                r.fail("/peak_threshold", "field 'peak_threshold' must lie in (0, 1]");
        }

        switch (command)
        {
        case Command::FieldMap:
            read_arrays(1);
            read_dfps(1);
            sc.grid = r.grid(r.require(doc, "", "grid"), "/grid", true);
            if (doc.contains("bfr_grid"))
                sc.bfr_grid = r.grid(doc["bfr_grid"], "/bfr_grid", true);
            break;
        case Command::Tradeoffs:
        {
            read_dfps(1);
            if (sc.dfps.size() != 1)
                r.fail("/dfps", "field 'dfps' must hold exactly one point for tradeoffs");
            if (!doc.contains("spacing_sweep") && !doc.contains("size_sweep"))
                r.fail("", "missing required field 'spacing_sweep' or 'size_sweep'");
            if (doc.contains("spacing_sweep"))
            {
                const auto &v = doc["spacing_sweep"];
                const std::string p = "/spacing_sweep";
                SpacingSweep s;
                s.rows = r.count(r.require(v, p, "rows"), p + "/rows", 1);
                s.cols = r.count(r.require(v, p, "cols"), p + "/cols", 1);
                const auto &ratios = r.list(r.require(v, p, "spacing_ratios"), p + "/spacing_ratios", 1);
                for (std::size_t i = 0; i < ratios.size(); ++i)
                    s.spacing_ratios.push_back(r.positive(ratios[i], p + "/spacing_ratios/" + std::to_string(i)));
                if (v.contains("profile"))
                    s.profile = r.profile(v["profile"], p + "/profile");
                sc.spacing_sweep = s;
            }
            if (doc.contains("size_sweep"))
            {
                const auto &v = doc["size_sweep"];
                const std::string p = "/size_sweep";
                SizeSweep s;
                if (v.contains("spacing_ratio"))
                    s.spacing_ratio = r.positive(v["spacing_ratio"], p + "/spacing_ratio");
                const auto &sides = r.list(r.require(v, p, "sides"), p + "/sides", 1);
                for (std::size_t i = 0; i < sides.size(); ++i)
                    s.sides.push_back(r.count(sides[i], p + "/sides/" + std::to_string(i), 1));
                if (v.contains("profile"))
                    s.profile = r.profile(v["profile"], p + "/profile");
                sc.size_sweep = s;
            }
            break;
        }
        case Command::Security:
            read_arrays(1);
            read_dfps(1);
            sc.grid = r.grid(r.require(doc, "", "grid"), "/grid", true);
            if (doc.contains("noise_power"))
                sc.noise_power = r.positive(doc["noise_power"], "/noise_power");
            if (doc.contains("target_snr_db"))
                sc.target_snr_db = r.number(doc["target_snr_db"], "/target_snr_db");
            if (doc.contains("threshold_db"))
                sc.threshold_db = r.number(doc["threshold_db"], "/threshold_db");
            if (!(sc.target_snr_db > sc.threshold_db))
                r.fail("/threshold_db", "field 'threshold_db' must be below target_snr_db");
            break;
        case Command::Adaptive:
        {
            read_arrays(1);
            if (sc.arrays.size() != 1)
                r.fail("/arrays", "field 'arrays' must hold exactly one array for adaptive runs");
            read_dfps(1);
            if (sc.dfps.size() != 1)
                r.fail("/dfps", "field 'dfps' must hold exactly one point for adaptive runs");
            const auto &v = r.require(doc, "", "adaptive");
            const std::string p = "/adaptive";
            AdaptiveSpec a;
            const auto &tiling = r.list(r.require(v, p, "tiling"), p + "/tiling", 2);
            a.tile_rows = r.count(tiling[0], p + "/tiling/0", 1);
            a.tile_cols = r.count(tiling[1], p + "/tiling/1", 1);
            if (sc.arrays[0].rows % a.tile_rows != 0 || sc.arrays[0].cols % a.tile_cols != 0)
                r.fail(p + "/tiling", "field 'adaptive.tiling' must divide the array dimensions");
            if (v.contains("phase_bits"))
            {
                a.phase_bits = static_cast<unsigned>(r.count(v["phase_bits"], p + "/phase_bits", 1));
                if (a.phase_bits > 16)
                    r.fail(p + "/phase_bits", "field 'adaptive.phase_bits' must be at most 16");
            }
            if (v.contains("tile_budget"))
                a.tile_budget = r.count(v["tile_budget"], p + "/tile_budget", 0);
            if (v.contains("max_epochs"))
                a.max_epochs = r.count(v["max_epochs"], p + "/max_epochs", 1);
            if (v.contains("init"))
            {
                const auto s = r.text(v["init"], p + "/init");
                if (s == "random") a.init = InitMode::Random;
                else if (s == "rough-csi") a.init = InitMode::RoughCsi;
                else r.fail(p + "/init", "field 'adaptive.init' must be random or rough-csi");
            }
            if (v.contains("csi_noise_rad"))
                a.csi_noise_rad = r.number(v["csi_noise_rad"], p + "/csi_noise_rad");
            if (v.contains("seeds"))
            {
                const auto &seeds = r.list(v["seeds"], p + "/seeds", 1);
                a.seeds.clear();
                for (std::size_t i = 0; i < seeds.size(); ++i)
                    a.seeds.push_back(r.count(seeds[i], p + "/seeds/" + std::to_string(i), 0));
            }
            if (v.contains("warm_start_offset"))
                a.warm_start_offset = r.point(v["warm_start_offset"], p + "/warm_start_offset");
            if (v.contains("oracle"))
            {
                if (!v["oracle"].is_boolean())
                    r.fail(p + "/oracle", "field 'adaptive.oracle' must be true or false");
                a.oracle = v["oracle"].get<bool>();
                if (a.oracle && sc.arrays[0].rows * sc.arrays[0].cols * a.phase_bits > 24)
                    r.fail(p + "/oracle", "field 'adaptive.oracle' needs at most 2^24 phase combinations");
            }
            sc.adaptive = a;
            break;
        }
        }
        return sc;
    }

    Scenario load_scenario(const std::filesystem::path &path, Command command)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw Error(ErrorCode::Validation, path.string() + ":1: cannot open scenario file");
        std::ostringstream ss;
        ss << f.rdbuf();
        return parse_scenario(ss.str(), path.filename().string(), command);
    }
}
