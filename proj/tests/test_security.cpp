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

#include "nearfocus/security.hpp"
#include "support.hpp"

using namespace nearfocus;

namespace
{
    SamplingGrid window()
    {
        return SamplingGrid::plane({}, test::axis({1, 0, 0}, -0.6, 0.6, 61), test::axis({0, 1, 0}, 0.2, 1.4, 61));
    }

    double steering_norm_sq(const UniformPlanarArray &arr, const Point3 &p)
    {
        double s = 0.0;
        for (std::size_t r = 0; r < arr.rows(); ++r)
            for (std::size_t c = 0; c < arr.cols(); ++c)
            {
                const double d = distance(arr.element_position(r, c), p);
                const double g = arr.wavelength() / (4.0 * 3.141592653589793 * d);
                s += g * g;
            }
        return s;
    }
}

TEST_CASE("sinr and dB helpers")
{
    CHECK(stream_sinr({4.0, 1.0}, 0, 1.0) == doctest::Approx(2.0));
    CHECK(stream_sinr({4.0, 1.0, 3.0}, 1, 2.0) == doctest::Approx(1.0 / 9.0));
    CHECK(to_db(10.0) == doctest::Approx(10.0));
    CHECK(from_db(to_db(3.7)) == doctest::Approx(3.7));
}

TEST_CASE("single stream calibration has a closed form")
{
    const UniformPlanarArray arr(6, 6, 0.5 * test::lambda, test::lambda);
    const Point3 dfp{0.1, 0.7, 0};
    SecurityScenario sc{arr, {dfp}, window(), 2.0, 10.0, 5.0};
    const auto cal = calibrate_power(sc);
    REQUIRE(cal.stream_powers.size() == 1);
    CHECK(cal.stream_powers[0] == doctest::Approx(10.0 * 2.0 / steering_norm_sq(arr, dfp)).epsilon(1e-10));
    CHECK(cal.sinr_at_dfp_db[0] == doctest::Approx(10.0));
}

TEST_CASE("two-stream calibration")
{
    const UniformPlanarArray arr(10, 10, 0.5 * test::lambda, test::lambda);
    SecurityScenario sc{arr, {{-0.2, 0.8, 0}, {0.2, 0.8, 0}}, window()};
    const auto cal = calibrate_power(sc);
    CHECK(cal.stream_powers[0] == doctest::Approx(cal.stream_powers[1]).epsilon(1e-9));
    CHECK(cal.max_residual_db < 1e-9);
    for (double s : cal.sinr_at_dfp_db)
        CHECK(s == doctest::Approx(10.0).epsilon(1e-9));

    // powers scale with noise, so the SINR map does not change
    SecurityScenario loud = sc;
    loud.noise_power = 10.0;
    const auto cal2 = calibrate_power(loud);
    CHECK(cal2.stream_powers[0] == doctest::Approx(10.0 * cal.stream_powers[0]).epsilon(1e-9));
    const auto m1 = security_map(sc, cal), m2 = security_map(loud, cal2);
    for (std::size_t k = 0; k < m1.max_sinr_db.size(); k += 37)
        CHECK(m1.max_sinr_db[k] == doctest::Approx(m2.max_sinr_db[k]).epsilon(1e-9));
    CHECK(m1.secure_area_fraction == m2.secure_area_fraction);

    // a higher target needs more power
    SecurityScenario demanding = sc;
    demanding.target_snr_db = 13.0;
    CHECK(calibrate_power(demanding).stream_powers[0] > cal.stream_powers[0]);
}

TEST_CASE("security mask")
{
    const UniformPlanarArray arr(10, 10, 0.5 * test::lambda, test::lambda);
    SecurityScenario sc{arr, {{-0.2, 0.8, 0}, {0.2, 0.8, 0}}, window()};
    const auto map = security_map(sc);
    std::size_t secure = 0;
    for (std::size_t k = 0; k < map.secure.size(); ++k)
    {
        CHECK(map.secure[k] == (map.max_sinr_db[k] < 5.0));
        secure += map.secure[k] ? 1 : 0;
    }
    CHECK(map.secure_area_fraction == doctest::Approx(static_cast<double>(secure) / map.secure.size()));
    CHECK(map.secure_area_fraction > 0.0);
    CHECK(map.secure_area_fraction < 1.0);
    const auto boundary = secure_boundary(map);
    CHECK_FALSE(boundary.empty());
    std::size_t around = 0;
    for (const auto &poly : boundary)
        around += point_in_polygon(poly, grid_coordinates(sc.grid, sc.dfps[0])) ? 1 : 0;
    CHECK(around >= 1);
}

TEST_CASE("infeasible targets diverge")
{
    const UniformPlanarArray arr(2, 2, 0.5 * test::lambda, test::lambda);
    SecurityScenario sc{arr, {{0, 0.8, 0}, {0.001, 0.8, 0}}, window()};
    CHECK(test::code_of([&] { calibrate_power(sc); }) == ErrorCode::CalibrationDiverged);
}
