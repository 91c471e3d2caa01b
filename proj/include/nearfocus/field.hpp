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

#ifndef NEARFOCUS_FIELD_HPP
#define NEARFOCUS_FIELD_HPP

#include "nearfocus/beamforming.hpp"
#include "nearfocus/geometry.hpp"

#include <vector>

namespace nearfocus
{
    enum class Normalization
    {
        Raw,
        PeakOne
    };

    // Received power density |a(r)^T w_m|^2 sampled over a grid. Streams add in power.
    struct FieldMap
    {
        SamplingGrid grid;
        std::vector<double> power;
        std::vector<std::vector<double>> per_stream_power; // [stream][point]
        Normalization normalization = Normalization::Raw;

        double max_power() const;
        std::size_t argmax() const;
        double at(std::size_t i, std::size_t j) const { return power[i * grid.axes()[1].samples + j]; }
    };

    // Data-parallel over grid points (OpenMP). Output does not depend on the thread schedule.
    FieldMap evaluate_field(const UniformPlanarArray &array, const BeamWeights &weights, const SamplingGrid &grid,
                            GainModel gain = GainModel::InverseDistance,
                            Normalization normalization = Normalization::Raw);

    // Serial reference built on steering_vector(); kept for cross-checking the parallel kernel.
    FieldMap evaluate_field_serial(const UniformPlanarArray &array, const BeamWeights &weights,
                                   const SamplingGrid &grid, GainModel gain = GainModel::InverseDistance,
                                   Normalization normalization = Normalization::Raw);

    // Scales power and every stream by 1 / max(power).
    FieldMap normalize_peak(FieldMap map);

    // Power of every stream added at a single point.
    double power_at(const UniformPlanarArray &array, const BeamWeights &weights, const Point3 &point,
                    GainModel gain = GainModel::InverseDistance);

    struct FocalPeak
    {
        Point3 location;
        double power = 0.0;
        std::size_t index = 0;
    };

    // Interior local maxima (8-neighbourhood) at or above relative_threshold * max, strongest first.
    // Throws GridTooSmall when either axis has fewer than 3 samples.
    std::vector<FocalPeak> find_focal_peaks(const FieldMap &map, double relative_threshold);
}

#endif
