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

#ifndef NEARFOCUS_SECURITY_HPP
#define NEARFOCUS_SECURITY_HPP

#include "nearfocus/contour.hpp"
#include "nearfocus/field.hpp"

#include <vector>

namespace nearfocus
{
    struct SecurityScenario
    {
        UniformPlanarArray array;
        std::vector<Point3> dfps;      // one RF chain / data stream per DFP
        SamplingGrid grid;
        double noise_power = 1.0;
        double target_snr_db = 10.0;   // gamma at every DFP
        double threshold_db = 5.0;     // gamma_th for successful decoding
        GainModel gain = GainModel::InverseDistance;
    };

    struct Calibration
    {
        std::vector<double> stream_powers;   // P_m
        std::vector<double> sinr_at_dfp_db;  // plug-back SINR of stream m at dfp m
        double max_residual_db = 0.0;
        std::size_t iterations = 0;
        BeamWeights weights;                 // unit-norm MRT chain per DFP
    };

    inline constexpr std::size_t calibration_max_iterations = 1000;

    double to_db(double ratio);
    double from_db(double db);

    // SINR of stream m given per-stream received powers s (already including P_m) and noise.
    double stream_sinr(const std::vector<double> &received, std::size_t m, double noise_power);

    // Solves P_m s_m(dfp_m) / (sum_{m' != m} P_m' s_m'(dfp_m) + noise) = gamma for all m by fixed-point iteration.
    // Throws CalibrationDiverged when the iteration does not settle within 1000 steps.
    Calibration calibrate_power(const SecurityScenario &scenario);

    struct SecurityMap
    {
        SamplingGrid grid;
        std::vector<std::vector<double>> sinr_db; // [stream][point]
        std::vector<double> max_sinr_db;          // max over streams
        std::vector<bool> secure;                 // max SINR below gamma_th
        double secure_area_fraction = 0.0;
        double threshold_db = 0.0;
    };

    SecurityMap security_map(const SecurityScenario &scenario, const Calibration &calibration);
    SecurityMap security_map(const SecurityScenario &scenario);

    // Closed gamma_th iso-contours of the max-stream SINR, in (axis1, axis2) grid coordinates.
    std::vector<Polyline> secure_boundary(const SecurityMap &map);

    // DFP position in the grid's (axis1, axis2) coordinates.
    Vertex2 grid_coordinates(const SamplingGrid &grid, const Point3 &p);
}

#endif
