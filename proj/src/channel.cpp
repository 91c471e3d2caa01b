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

#include "nearfocus/channel.hpp"
#include "nearfocus/error.hpp"

#include <algorithm>
#include <numbers>

namespace nearfocus
{
    double element_gain(GainModel model, double distance_m, double wavelength_m)
    {
        if (model == GainModel::Unit)
            return 1.0;
        return wavelength_m / (4.0 * std::numbers::pi * distance_m);
    }

    cplx element_response(GainModel model, double distance_m, double wavelength_m)
    {
        return std::polar(element_gain(model, distance_m, wavelength_m),
                          -2.0 * std::numbers::pi * distance_m / wavelength_m);
    }

    std::vector<cplx> SteeringVector::normalized() const
    {
        double sq = 0.0;
        for (const auto &e : entries)
            sq += std::norm(e);
        const double inv = 1.0 / std::sqrt(sq);
        std::vector<cplx> out(entries.size());
        std::transform(entries.begin(), entries.end(), out.begin(), [inv](const cplx &e) { return e * inv; });
        return out;
    }

    double fraunhofer_distance(const UniformPlanarArray &array)
    {
        const double d = array.aperture_diameter();
        return 2.0 * d * d / array.wavelength();
    }

    FieldRegions field_regions(const UniformPlanarArray &array)
    {
        return {fraunhofer_distance(array), array.wavelength()};
    }

    SteeringVector steering_vector(const UniformPlanarArray &array, const Point3 &point, GainModel gain)
    {
        if (!point.finite())
            throw Error(ErrorCode::InvalidArgument, "steering point must be finite");
        SteeringVector sv;
        sv.wavelength_m = array.wavelength();
        sv.gain = gain;
        sv.entries.reserve(array.size());
        sv.distances_m.reserve(array.size());
        for (const auto &p : element_positions(array))
        {
            const double d = distance(p, point);
            if (d < on_aperture_tolerance_m)
                throw Error(ErrorCode::PointOnAperture, "evaluation point coincides with an array element");
            sv.distances_m.push_back(d);
            sv.entries.push_back(element_response(gain, d, sv.wavelength_m));
        }
        return sv;
    }

    double correlation(const SteeringVector &a1, const SteeringVector &a2)
    {
        if (a1.size() != a2.size() || a1.size() == 0)
            throw Error(ErrorCode::LengthMismatch, "steering vectors differ in length");
        if (a1.wavelength_m != a2.wavelength_m)
            throw Error(ErrorCode::InvalidArgument, "steering vectors use different wavelengths");
        cplx acc{0.0, 0.0};
        for (std::size_t n = 0; n < a1.size(); ++n)
        {
            const double delta = a1.distances_m[n] - a2.distances_m[n];
            acc += std::polar(1.0, -2.0 * std::numbers::pi * delta / a1.wavelength_m);
        }
        return std::min(1.0, std::abs(acc) / static_cast<double>(a1.size()));
    }

    std::vector<std::pair<std::size_t, double>> orthogonality_profile(const Point3 &r1, const Point3 &r2,
                                                                      const std::vector<ArraySize> &sizes,
                                                                      double spacing_m, double wavelength_m)
    {
        if (sizes.empty())
            throw Error(ErrorCode::InvalidArgument, "orthogonality profile needs at least one array size");
        std::vector<std::pair<std::size_t, double>> out;
        out.reserve(sizes.size());
        for (const auto &s : sizes)
        {
            const UniformPlanarArray array(s.rows, s.cols, spacing_m, wavelength_m);
            out.emplace_back(array.size(), correlation(steering_vector(array, r1, GainModel::Unit),
                                                       steering_vector(array, r2, GainModel::Unit)));
        }
        return out;
    }
}
