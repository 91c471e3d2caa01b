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

#include "nearfocus/field.hpp"
#include "nearfocus/error.hpp"

#include <algorithm>
#include <atomic>
#include <numbers>

namespace nearfocus
{
    double FieldMap::max_power() const
    {
        return power.empty() ? 0.0 : *std::max_element(power.begin(), power.end());
    }

    std::size_t FieldMap::argmax() const
    {
        return static_cast<std::size_t>(std::distance(power.begin(), std::max_element(power.begin(), power.end())));
    }

    namespace
    {
        void check_weights(const UniformPlanarArray &array, const BeamWeights &weights)
        {
            if (weights.per_chain.empty())
                throw Error(ErrorCode::InvalidArgument, "beam weights carry no RF chain");
            for (const auto &c : weights.per_chain)
                if (c.size() != array.size())
                    throw Error(ErrorCode::LengthMismatch, "weight vector length differs from element count");
        }

        FieldMap finish(FieldMap map, Normalization normalization)
        {
            if (normalization == Normalization::PeakOne)
                return normalize_peak(std::move(map));
            return map;
        }
    }

    FieldMap evaluate_field(const UniformPlanarArray &array, const BeamWeights &weights, const SamplingGrid &grid,
                            GainModel gain, Normalization normalization)
    {
        check_weights(array, weights);
        const auto elements = element_positions(array);
        const std::size_t n_el = elements.size();
        const std::size_t n_streams = weights.rf_chains();
        const std::size_t n_pts = grid.size();

        std::vector<double> ex(n_el), ey(n_el), ez(n_el);
        for (std::size_t n = 0; n < n_el; ++n)
        {
            ex[n] = elements[n].x;
            ey[n] = elements[n].y;
            ez[n] = elements[n].z;
        }

        FieldMap map{grid, std::vector<double>(n_pts, 0.0),
                     std::vector<std::vector<double>>(n_streams, std::vector<double>(n_pts, 0.0)),
                     Normalization::Raw};

        const double lambda = array.wavelength();
        std::atomic<bool> on_aperture{false};

#pragma omp parallel
        {
            std::vector<cplx> acc(n_streams);
#pragma omp for schedule(static)
            for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n_pts); ++k)
            {
                const Point3 r = grid.point(static_cast<std::size_t>(k));
                std::fill(acc.begin(), acc.end(), cplx{0.0, 0.0});
                for (std::size_t n = 0; n < n_el; ++n)
                {
                    const double dx = r.x - ex[n], dy = r.y - ey[n], dz = r.z - ez[n];
                    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
                    if (d < on_aperture_tolerance_m)
                        on_aperture.store(true, std::memory_order_relaxed);
                    const cplx resp = element_response(gain, d, lambda);
                    for (std::size_t m = 0; m < n_streams; ++m)
                        acc[m] += resp * weights.per_chain[m][n];
                }
                double total = 0.0;
                for (std::size_t m = 0; m < n_streams; ++m)
                {
                    const double s = std::norm(acc[m]);
                    map.per_stream_power[m][static_cast<std::size_t>(k)] = s;
                    total += s;
                }
                map.power[static_cast<std::size_t>(k)] = total;
            }
        }
        if (on_aperture.load())
            throw Error(ErrorCode::PointOnAperture, "a grid point coincides with an array element");
        return finish(std::move(map), normalization);
    }

    FieldMap evaluate_field_serial(const UniformPlanarArray &array, const BeamWeights &weights,
                                   const SamplingGrid &grid, GainModel gain, Normalization normalization)
    {
        check_weights(array, weights);
        const std::size_t n_streams = weights.rf_chains();
        FieldMap map{grid, {}, std::vector<std::vector<double>>(n_streams), Normalization::Raw};
        map.power.reserve(grid.size());
        for (const auto &r : grid_points(grid))
        {
            const auto a = steering_vector(array, r, gain);
            double total = 0.0;
            for (std::size_t m = 0; m < n_streams; ++m)
            {
                const double s = std::norm(array_response(a.entries, weights.per_chain[m]));
                map.per_stream_power[m].push_back(s);
                total += s;
            }
            map.power.push_back(total);
        }
        return finish(std::move(map), normalization);
    }

    FieldMap normalize_peak(FieldMap map)
    {
        const double peak = map.max_power();
        if (peak > 0.0)
        {
            for (auto &p : map.power)
                p /= peak;
            for (auto &stream : map.per_stream_power)
                for (auto &p : stream)
                    p /= peak;
        }
        map.normalization = Normalization::PeakOne;
        return map;
    }

    double power_at(const UniformPlanarArray &array, const BeamWeights &weights, const Point3 &point,
                    GainModel gain)
    {
        const auto a = steering_vector(array, point, gain);
        double total = 0.0;
        for (const auto &chain : weights.per_chain)
            total += std::norm(array_response(a.entries, chain));
        return total;
    }

    std::vector<FocalPeak> find_focal_peaks(const FieldMap &map, double relative_threshold)
    {
        if (map.grid.kind() != GridKind::Plane)
            throw Error(ErrorCode::InvalidArgument, "peak search needs a 2D map");
        if (!(relative_threshold > 0.0 && relative_threshold <= 1.0))
            throw Error(ErrorCode::InvalidArgument, "relative threshold must lie in (0, 1]");
        const std::size_t n1 = map.grid.axes()[0].samples, n2 = map.grid.axes()[1].samples;
        if (n1 < 3 || n2 < 3)
            throw Error(ErrorCode::GridTooSmall, "peak search needs at least 3 samples per axis");

        const double floor_power = relative_threshold * map.max_power();
        std::vector<FocalPeak> peaks;
        for (std::size_t i = 1; i + 1 < n1; ++i)
        {
            for (std::size_t j = 1; j + 1 < n2; ++j)
            {
                const std::size_t idx = i * n2 + j;
                const double v = map.power[idx];
                if (v < floor_power)
                    continue;
                bool is_max = true;
                // Plateaus: a point must beat earlier neighbours strictly and later ones weakly.
                for (int di = -1; di <= 1 && is_max; ++di)
                    for (int dj = -1; dj <= 1 && is_max; ++dj)
                    {
                        if (di == 0 && dj == 0)
                            continue;
                        const std::size_t nidx = (i + di) * n2 + (j + dj);
                        is_max = nidx < idx ? v > map.power[nidx] : v >= map.power[nidx];
                    }
                if (is_max)
                    peaks.push_back({map.grid.point(i, j), v, idx});
            }
        }
        std::stable_sort(peaks.begin(), peaks.end(),
                         [](const FocalPeak &a, const FocalPeak &b) { return a.power > b.power; });
        return peaks;
    }
}
