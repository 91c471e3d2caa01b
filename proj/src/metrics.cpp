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

#include "nearfocus/metrics.hpp"
#include "nearfocus/error.hpp"

#include <algorithm>
#include <numeric>

namespace nearfocus
{
    HpbwResult hpbw(const std::vector<ProfileSample> &profile)
    {
        if (profile.size() < 5)
            throw Error(ErrorCode::InvalidArgument, "HPBW needs at least 5 profile samples");
        const auto peak_it = std::max_element(profile.begin(), profile.end(),
                                              [](const auto &a, const auto &b) { return a.power < b.power; });
        const std::size_t k = static_cast<std::size_t>(std::distance(profile.begin(), peak_it));
        const double peak = peak_it->power;
        if (!(peak > 0.0))
            throw Error(ErrorCode::NoCrossing, "profile carries no power");
        const double half = 0.5 * peak;

        auto cross = [&](std::size_t below, std::size_t above) {
            const auto &a = profile[below];
            const auto &b = profile[above];
            const double t = (half - a.power) / (b.power - a.power);
            return a.position + t * (b.position - a.position);
        };

        std::size_t i = k;
        while (i > 0 && profile[i].power >= half)
            --i;
        if (profile[i].power >= half)
            throw Error(ErrorCode::NoCrossing, "profile never drops below half power on the left side");
        const double left = cross(i, i + 1);

        std::size_t j = k;
        while (j + 1 < profile.size() && profile[j].power >= half)
            ++j;
        if (profile[j].power >= half)
            throw Error(ErrorCode::NoCrossing, "profile never drops below half power on the right side");
        const double right = cross(j, j - 1);

        std::size_t strong_maxima = 0;
        for (std::size_t n = 1; n + 1 < profile.size(); ++n)
        {
            const double v = profile[n].power;
            if (v >= 0.9 * peak && v >= profile[n - 1].power && v > profile[n + 1].power)
                ++strong_maxima;
        }
        return {std::abs(right - left), std::min(left, right), std::max(left, right), k, strong_maxima > 1};
    }

    std::vector<ProfileSample> profile_from_line(const FieldMap &line_map)
    {
        if (line_map.grid.kind() != GridKind::Line)
            throw Error(ErrorCode::InvalidArgument, "profile extraction needs a line grid");
        const auto &axis = line_map.grid.axes()[0];
        std::vector<ProfileSample> out(line_map.power.size());
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = {axis.coordinate(k), line_map.power[k]};
        return out;
    }

    BfrResult bfr(const FieldMap &map, const Point3 &dfp, double eta)
    {
        if (map.grid.kind() != GridKind::Plane)
            throw Error(ErrorCode::InvalidArgument, "BFR needs a 2D map");
        if (!(eta > 0.0 && eta < 1.0))
            throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
        const auto &ax = map.grid.axes();
        const Point3 rel = dfp - map.grid.origin();
        const double normal_offset = (rel - ax[0].direction * rel.dot(ax[0].direction) -
                                      ax[1].direction * rel.dot(ax[1].direction)).norm();
        for (const auto &a : ax)
        {
            const double c = rel.dot(a.direction);
            if (c < a.start - 1e-9 || c > a.stop + 1e-9)
                throw Error(ErrorCode::InvalidArgument, "DFP lies outside the map window");
        }
        if (normal_offset > 1e-6)
            throw Error(ErrorCode::InvalidArgument, "DFP does not lie on the map plane");

        const std::size_t n1 = ax[0].samples, n2 = ax[1].samples, n = map.power.size();
        std::vector<double> dist(n);
        for (std::size_t k = 0; k < n; ++k)
            dist[k] = distance(map.grid.point(k), dfp);
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
        });

        double total = 0.0, boundary = 0.0;
        for (std::size_t k = 0; k < n; ++k)
        {
            total += map.power[k];
            const std::size_t i = k / n2, j = k % n2;
            if (i == 0 || j == 0 || i + 1 == n1 || j + 1 == n2)
                boundary += map.power[k];
        }
        if (!(total > 0.0))
            throw Error(ErrorCode::InvalidArgument, "map carries no power");

        BfrResult out;
        out.eta = eta;
        out.boundary_fraction = boundary / total;
        out.window_warning = out.boundary_fraction > 0.1;
        double acc = 0.0;
        const double target = eta * total;
        for (std::size_t idx : order)
        {
            acc += map.power[idx];
            if (acc >= target)
            {
                out.radius_m = dist[idx];
                return out;
            }
        }
        out.radius_m = dist[order.back()];
        return out;
    }

    SamplingGrid profile_grid(const Point3 &dfp, const Point3 &array_center, const ProfileConfig &config)
    {
        if (config.mode == ProfileMode::AxisLine)
        {
            const Point3 dir = config.axis * (1.0 / config.axis.norm());
            // origin: the DFP with its component along the axis removed, so coordinates are absolute along the axis
            const Point3 origin = dfp - dir * dfp.dot(dir);
            return SamplingGrid::line(origin, {dir, config.start, config.stop, config.samples});
        }
        const Point3 ray = dfp - array_center;
        return SamplingGrid::line(array_center, {ray * (1.0 / ray.norm()), config.start, config.stop, config.samples});
    }

    namespace
    {
        double profile_hpbw(const UniformPlanarArray &array, const Point3 &dfp, const ProfileConfig &cfg,
                            GainModel gain, FieldMap *profile_out = nullptr)
        {
            const auto w = mrt_weights(steering_vector(array, dfp, gain));
            auto line = evaluate_field(array, w, profile_grid(dfp, array.center(), cfg), gain);
            const double width = hpbw(profile_from_line(line)).width_m;
            if (profile_out)
                *profile_out = std::move(line);
            return width;
        }
    }

    std::vector<SpacingRow> spacing_tradeoff(const ArrayTemplate &tpl, const Point3 &dfp,
                                             const std::vector<double> &spacing_ratios,
                                             const ProfileConfig &profile, GainModel gain)
    {
        if (spacing_ratios.empty())
            throw Error(ErrorCode::InvalidArgument, "spacing sweep is empty");
        std::vector<SpacingRow> rows;
        for (double ratio : spacing_ratios)
        {
            if (!(ratio > 0.0))
                throw Error(ErrorCode::InvalidArgument, "spacing ratios must be positive");
            const UniformPlanarArray array(tpl.rows, tpl.cols, ratio * tpl.wavelength_m, tpl.wavelength_m,
                                           tpl.center, tpl.plane);
            const auto a = steering_vector(array, dfp, gain);
            const double peak = std::norm(array_response(a.entries, mrt_weights(a).weights));
            FieldMap line{profile_grid(dfp, tpl.center, profile), {}, {}, Normalization::Raw};
            const double width = profile_hpbw(array, dfp, profile, gain, &line);
            rows.push_back({ratio, peak, 0.0, width, std::move(line)});
        }
        double reference = rows.front().peak_power;
        for (const auto &r : rows)
            if (r.spacing_ratio == 0.5)
                reference = r.peak_power;
        for (auto &r : rows)
            r.relative_peak = r.peak_power / reference;
        return rows;
    }

    std::vector<SizeRow> size_tradeoff(double spacing_ratio, double wavelength_m, const Point3 &dfp,
                                       const std::vector<std::size_t> &sides, const ProfileConfig &profile,
                                       GainModel gain)
    {
        std::vector<SizeRow> out;
        for (std::size_t side : sides)
        {
            const UniformPlanarArray array(side, side, spacing_ratio * wavelength_m, wavelength_m);
            SizeRow row{side, std::nullopt, ""};
            try
            {
                row.hpbw_m = profile_hpbw(array, dfp, profile, gain);
            }
            catch (const Error &e)
            {
                if (e.code() != ErrorCode::NoCrossing)
                    throw;
                ProfileConfig wide = profile;
                const double span = profile.stop - profile.start;
                wide.start = std::max(profile.start - span, 0.5 * profile.start);
                wide.stop = profile.stop + span;
                wide.samples = 2 * profile.samples - 1;
                try
                {
                    row.hpbw_m = profile_hpbw(array, dfp, wide, gain);
                    row.note = "window enlarged";
                }
                catch (const Error &e2)
                {
                    if (e2.code() != ErrorCode::NoCrossing)
                        throw;
                    row.note = e2.what();
                }
            }
            out.push_back(std::move(row));
        }
        return out;
    }

    SpotMetrics spot_metrics(const FieldMap &map, const Point3 &dfp, double eta)
    {
        if (map.grid.kind() != GridKind::Plane)
            throw Error(ErrorCode::InvalidArgument, "spot metrics need a 2D map");
        SpotMetrics out;
        const std::size_t k = map.argmax();
        const std::size_t n2 = map.grid.axes()[1].samples;
        out.peak_power = map.power[k];
        out.peak_location = map.grid.point(k);
        std::vector<ProfileSample> cut(n2);
        for (std::size_t j = 0; j < n2; ++j)
            cut[j] = {map.grid.axes()[1].coordinate(j), map.power[(k / n2) * n2 + j]};
        try
        {
            out.hpbw_m = hpbw(cut).width_m;
        }
        catch (const Error &)
        {
        }
        out.bfr = bfr(map, dfp, eta);
        out.num_significant_peaks = find_focal_peaks(map, 0.5).size();
        return out;
    }
}
