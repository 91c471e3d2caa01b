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

#ifndef NEARFOCUS_METRICS_HPP
#define NEARFOCUS_METRICS_HPP

#include "nearfocus/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nearfocus
{
    struct ProfileSample
    {
        double position = 0.0; // [m] along the profile line
        double power = 0.0;
    };

    struct HpbwResult
    {
        double width_m = 0.0;
        double left_m = 0.0, right_m = 0.0; // half-power crossings
        std::size_t peak_index = 0;
        bool multiple_peaks = false;        // another local max above 0.9 * peak
    };

    // Half-power width between the crossings bracketing the global maximum, linear interpolation.
    // Throws NoCrossing naming the side that never drops below half the peak.
    HpbwResult hpbw(const std::vector<ProfileSample> &profile);

    std::vector<ProfileSample> profile_from_line(const FieldMap &line_map);

    struct BfrResult
    {
        double radius_m = 0.0;
        double eta = 0.0;
        double boundary_fraction = 0.0; // share of window power on the outermost cells
        bool window_warning = false;    // boundary_fraction > 0.1, reference plane truncated
    };

    // Smallest radius around dfp whose cells hold eta of the window's total power.
    // Cells are accumulated by (distance, row-major index).
    BfrResult bfr(const FieldMap &map, const Point3 &dfp, double eta);

    // Line through the DFP used for the distance profiles.
    enum class ProfileMode
    {
        AxisLine, // dfp + t * axis, t in [start, stop] (the y-axis line through the DFP by default)
        Radial    // t * dfp / |dfp| from the array center, t in [start, stop]
    };

    struct ProfileConfig
    {
        ProfileMode mode = ProfileMode::AxisLine;
        Point3 axis{0.0, 1.0, 0.0};
        // For AxisLine: absolute coordinate along `axis` (y in metres); for Radial: distance from the center.
        double start = 0.2;
        double stop = 3.0;
        std::size_t samples = 2801;
    };

    SamplingGrid profile_grid(const Point3 &dfp, const Point3 &array_center, const ProfileConfig &config);

    struct ArrayTemplate
    {
        std::size_t rows = 60, cols = 60;
        double wavelength_m = 0.0;
        Point3 center{};
        ArrayPlane plane = ArrayPlane::XZ;
    };

    struct SpacingRow
    {
        double spacing_ratio = 0.0;  // spacing / lambda
        double peak_power = 0.0;     // MRT power at the DFP, unit-norm weights
        double relative_peak = 0.0;  // peak_power / peak_power at spacing_ratio 0.5 (first entry if absent)
        double hpbw_m = 0.0;
        FieldMap profile;
    };

    std::vector<SpacingRow> spacing_tradeoff(const ArrayTemplate &array, const Point3 &dfp,
                                             const std::vector<double> &spacing_ratios,
                                             const ProfileConfig &profile = {},
                                             GainModel gain = GainModel::InverseDistance);

    struct SizeRow
    {
        std::size_t side = 0; // sqrt(N)
        std::optional<double> hpbw_m;
        std::string note;     // reason when hpbw is missing, or "window enlarged"
    };

    // Square arrays side x side; on NoCrossing the window is enlarged once before giving up.
    std::vector<SizeRow> size_tradeoff(double spacing_ratio, double wavelength_m, const Point3 &dfp,
                                       const std::vector<std::size_t> &sides, const ProfileConfig &profile = {},
                                       GainModel gain = GainModel::InverseDistance);

    struct SpotMetrics
    {
        double peak_power = 0.0;
        Point3 peak_location;
        std::optional<double> hpbw_m; // along the second grid axis through the peak
        std::optional<BfrResult> bfr;
        std::size_t num_significant_peaks = 0; // at relative threshold 0.5
    };

    SpotMetrics spot_metrics(const FieldMap &map, const Point3 &dfp, double eta = 0.9);
}

#endif
