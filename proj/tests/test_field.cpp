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

#include "nearfocus/beamforming.hpp"
#include "nearfocus/field.hpp"
#include "support.hpp"

#include <numbers>
#include <omp.h>

using namespace nearfocus;

TEST_CASE("parallel kernel agrees with the serial reference")
{
    const UniformPlanarArray arr(12, 12, 0.5 * test::lambda, test::lambda);
    const auto w = multi_focal_weights(arr, {{-0.1, 0.5, 0}, {0.1, 0.6, 0.02}});
    const auto g = SamplingGrid::plane({0, 0.55, 0}, test::axis({1, 0, 0}, -0.3, 0.3, 37),
                                       test::axis({0, 1, 0}, -0.2, 0.2, 29));
    omp_set_num_threads(4);
    for (auto gain : {GainModel::Unit, GainModel::InverseDistance})
    {
        const auto par = evaluate_field(arr, w, g, gain);
        const auto ser = evaluate_field_serial(arr, w, g, gain);
        REQUIRE(par.power.size() == ser.power.size());
        for (std::size_t k = 0; k < par.power.size(); ++k)
        {
            CHECK(par.power[k] == doctest::Approx(ser.power[k]).epsilon(1e-10));
            for (std::size_t m = 0; m < 2; ++m)
                CHECK(par.per_stream_power[m][k] == doctest::Approx(ser.per_stream_power[m][k]).epsilon(1e-10));
        }
    }
}

TEST_CASE("streams add in power")
{
    const UniformPlanarArray arr(6, 6, 0.5 * test::lambda, test::lambda);
    const auto w = multi_focal_weights(arr, {{-0.1, 0.5, 0}, {0.1, 0.6, 0.0}});
    const auto g = SamplingGrid::line({0, 0.5, 0}, test::axis({1, 0, 0}, -0.3, 0.3, 31));
    const auto map = evaluate_field(arr, w, g);
    for (std::size_t k = 0; k < map.power.size(); ++k)
        CHECK(map.power[k] == doctest::Approx(map.per_stream_power[0][k] + map.per_stream_power[1][k]));
}

TEST_CASE("single element falls off as inverse square")
{
    const UniformPlanarArray one(1, 1, 0.5 * test::lambda, test::lambda);
    const BeamWeights w{{{1.0, 0.0}}, {{{1.0, 0.0}}}, std::nullopt};
    const double p1 = power_at(one, w, {0, 1, 0});
    const double p2 = power_at(one, w, {0, 2, 0});
    CHECK(p1 / p2 == doctest::Approx(4.0));
    const double g = test::lambda / (4 * std::numbers::pi);
    CHECK(p1 == doctest::Approx(g * g));
}

TEST_CASE("normalisation and evaluation on the aperture")
{
    const UniformPlanarArray one(1, 1, 0.5 * test::lambda, test::lambda);
    const BeamWeights w{{{1.0, 0.0}}, {{{1.0, 0.0}}}, std::nullopt};
    const auto g = SamplingGrid::line({0, 0.1, 0}, test::axis({0, 1, 0}, 0, 1, 11));
    const auto peak = evaluate_field(one, w, g, GainModel::InverseDistance, Normalization::PeakOne);
    CHECK(peak.max_power() == doctest::Approx(1.0));
    CHECK(peak.argmax() == 0);
    const auto through = SamplingGrid::line({0, 0, 0}, test::axis({0, 1, 0}, 0, 1, 11));
    CHECK(test::code_of([&] { evaluate_field(one, w, through); }) == ErrorCode::PointOnAperture);
}

TEST_CASE("peak finder on a synthetic map")
{
    const auto g = SamplingGrid::plane({}, test::axis({1, 0, 0}, 0, 1, 11), test::axis({0, 1, 0}, 0, 1, 11));
    FieldMap m{g, std::vector<double>(121, 0.0), {}, Normalization::Raw};
    auto set = [&](std::size_t i, std::size_t j, double v) { m.power[i * 11 + j] = v; };
    set(3, 3, 1.0);
    set(7, 7, 0.6);
    set(5, 8, 0.3);
    set(0, 0, 5.0); // on the edge, never reported
    // plateau of two equal cells counts once
    set(8, 2, 0.8);
    set(8, 3, 0.8);
    const auto peaks = find_focal_peaks(m, 0.05);
    REQUIRE(peaks.size() == 4);
    CHECK(peaks[0].power == 1.0);
    CHECK(peaks[1].power == 0.8);
    CHECK(peaks[2].power == 0.6);
    CHECK(peaks[0].location == g.point(3, 3));
    CHECK(find_focal_peaks(m, 0.1).size() == 3); // threshold is relative to the map maximum

    const auto thin = SamplingGrid::plane({}, test::axis({1, 0, 0}, 0, 1, 2), test::axis({0, 1, 0}, 0, 1, 11));
    FieldMap t{thin, std::vector<double>(22, 1.0), {}, Normalization::Raw};
    CHECK(test::code_of([&] { find_focal_peaks(t, 0.5); }) == ErrorCode::GridTooSmall);
}

TEST_CASE("sparse 20x20 array shows grating lobes, half-wavelength does not")
{
    const Point3 dfp{0, 1, 0};
    const auto window = SamplingGrid::plane({0, 0, 0}, test::axis({1, 0, 0}, -1.5, 1.5, 301),
                                            test::axis({0, 1, 0}, 0.2, 2.0, 181));
    const UniformPlanarArray sparse(20, 20, 1.5 * test::lambda, test::lambda);
    const auto lobes = find_focal_peaks(evaluate_field(sparse, mrt_weights(steering_vector(sparse, dfp)), window), 0.5);
    CHECK(lobes.size() >= 2);
    const UniformPlanarArray dense(20, 20, 0.5 * test::lambda, test::lambda);
    // transverse plane: along y the small aperture's power keeps rising toward the array
    const auto near = SamplingGrid::plane({0, 1, 0}, test::axis({1, 0, 0}, -0.5, 0.5, 101),
                                          test::axis({0, 0, 1}, -0.5, 0.5, 101));
    CHECK(find_focal_peaks(evaluate_field(dense, mrt_weights(steering_vector(dense, dfp)), near), 0.5).size() == 1);
}
