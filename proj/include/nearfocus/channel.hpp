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

#ifndef NEARFOCUS_CHANNEL_HPP
#define NEARFOCUS_CHANNEL_HPP

#include "nearfocus/geometry.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace nearfocus
{
    using cplx = std::complex<double>;

    // Amplitude model g(d) applied on top of the exp(-j 2 pi d / lambda) phase term.
    enum class GainModel
    {
        Unit,            // g = 1
        InverseDistance  // g = lambda / (4 pi d), free-space amplitude
    };

    inline constexpr double on_aperture_tolerance_m = 1e-9;

    double element_gain(GainModel model, double distance_m, double wavelength_m);

    // Free-space LoS response of one element at distance d.
    cplx element_response(GainModel model, double distance_m, double wavelength_m);

    // Spherical-wavefront array response a(r) toward a single point.
    struct SteeringVector
    {
        std::vector<cplx> entries;
        std::vector<double> distances_m;
        double wavelength_m = 0.0;
        GainModel gain = GainModel::Unit;

        std::size_t size() const { return entries.size(); }
        std::vector<cplx> normalized() const;
    };

    struct FieldRegions
    {
        double fraunhofer_m = 0.0;     // D^F = 2 D^2 / lambda
        double reactive_bound_m = 0.0; // D^N, fixed at one wavelength
    };

    double fraunhofer_distance(const UniformPlanarArray &array);
    FieldRegions field_regions(const UniformPlanarArray &array);

    // Throws PointOnAperture when the point is within 1 nm of an element.
    SteeringVector steering_vector(const UniformPlanarArray &array, const Point3 &point,
                                   GainModel gain = GainModel::InverseDistance);

    // (1/N) |sum_n exp(-j 2 pi (d1_n - d2_n) / lambda)|, always on phase-only entries.
    double correlation(const SteeringVector &a1, const SteeringVector &a2);

    struct ArraySize
    {
        std::size_t rows = 1, cols = 1;
    };

    std::vector<std::pair<std::size_t, double>> orthogonality_profile(const Point3 &r1, const Point3 &r2,
                                                                      const std::vector<ArraySize> &sizes,
                                                                      double spacing_m, double wavelength_m);
}

#endif
