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
#include "nearfocus/metrics.hpp"
#include "support.hpp"

#include <algorithm>
#include <numbers>

using namespace nearfocus;

namespace
{
    std::vector<ProfileSample> sample(double a, double b, std::size_t n, double (*f)(double))
    {
        std::vector<ProfileSample> out(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            const double x = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
            out[k] = {x, f(x)};
        }
        return out;
    }
}

TEST_CASE("HPBW of a triangular profile")
{
    const auto p = sample(-2, 2, 401, [](double x) { return std::max(0.0, 1.0 - std::abs(x)); });
    const auto r = hpbw(p);
    CHECK(r.width_m == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.left_m == doctest::Approx(-0.5));
    CHECK(r.right_m == doctest::Approx(0.5));
    CHECK(r.peak_index == 200);
    CHECK_FALSE(r.multiple_peaks);
}

TEST_CASE("HPBW of a Gaussian profile")
{
    // exp(-x^2) drops to one half at x = sqrt(ln 2)
    const auto p = sample(-3, 3, 6001, [](double x) { return std::exp(-x * x); });
    CHECK(hpbw(p).width_m == doctest::Approx(2 * std::sqrt(std::log(2.0))).epsilon(1e-6));
}

TEST_CASE("HPBW failures")
{
    const auto ramp = sample(0, 1, 11, [](double x) { return 1.0 + x; });
    CHECK(test::code_of([&] { hpbw(ramp); }) == ErrorCode::NoCrossing);
    const auto few = sample(0, 1, 4, [](double x) { return x; });
    CHECK(test::code_of([&] { hpbw(few); }) == ErrorCode::InvalidArgument);
    const auto two = sample(-3, 3, 601, [](double x) { return std::exp(-8 * (x - 1) * (x - 1)) + std::exp(-8 * (x + 1) * (x + 1)); });
    CHECK(hpbw(two).multiple_peaks);
}

TEST_CASE("BFR of uniform power on a square window")
{
    // fraction of the square [-1, 1]^2 inside radius r <= 1 is pi r^2 / 4
    const auto g = SamplingGrid::plane({0, 1, 0}, test::axis({1, 0, 0}, -1, 1, 201), test::axis({0, 0, 1}, -1, 1, 201));
    const FieldMap m{g, std::vector<double>(g.size(), 1.0), {}, Normalization::Raw};
    const auto r = bfr(m, {0, 1, 0}, 0.5);
    CHECK(r.radius_m == doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(0.01));
    CHECK(r.boundary_fraction == doctest::Approx(800.0 / (201.0 * 201.0)));
    CHECK_FALSE(r.window_warning);
}

TEST_CASE("BFR of a point mass is zero")
{
    const auto g = SamplingGrid::plane({}, test::axis({1, 0, 0}, -1, 1, 21), test::axis({0, 1, 0}, -1, 1, 21));
    FieldMap m{g, std::vector<double>(g.size(), 0.0), {}, Normalization::Raw};
    m.power[10 * 21 + 10] = 3.0;
    CHECK(bfr(m, {}, 0.9).radius_m == 0.0);
    m.power[0] = 3.0;
    CHECK(bfr(m, {}, 0.9).window_warning);
    CHECK(test::code_of([&] { bfr(m, {2, 0, 0}, 0.9); }) == ErrorCode::InvalidArgument);
    CHECK(test::code_of([&] { bfr(m, {0, 0, 0.1}, 0.9); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("axis-line profile passes through the DFP")
{
    const Point3 dfp{0.0, 1.0, -0.5};
    const auto g = profile_grid(dfp, {}, {});
    CHECK(g.kind() == GridKind::Line);
    CHECK(distance(g.point(0), {0.0, 0.2, -0.5}) < 1e-12);
    CHECK(distance(g.point(800), dfp) < 1e-12);
    ProfileConfig radial;
    radial.mode = ProfileMode::Radial;
    radial.start = 0.5;
    const auto rg = profile_grid(dfp, {}, radial);
    const Point3 p = rg.point(0);
    CHECK(p.norm() == doctest::Approx(0.5));
    CHECK(p.dot(dfp) == doctest::Approx(p.norm() * dfp.norm()));
}

TEST_CASE("spacing trade-off on a small array")
{
    const Point3 dfp{0.0, 0.3, -0.1};
    ProfileConfig lateral;
    lateral.axis = {1, 0, 0};
    lateral.start = -0.3;
    lateral.stop = 0.3;
    lateral.samples = 601;
    const auto rows = spacing_tradeoff({8, 8, test::lambda}, dfp, {1.0, 0.5}, lateral);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].relative_peak == doctest::Approx(1.0));
    // power at the DFP equals the squared steering norm
    const UniformPlanarArray arr(8, 8, 0.5 * test::lambda, test::lambda);
    double sq = 0.0;
    for (auto x : steering_vector(arr, dfp).entries)
        sq += std::norm(x);
    CHECK(rows[1].peak_power == doctest::Approx(sq));
    CHECK(rows[0].hpbw_m < rows[1].hpbw_m);
}

TEST_CASE("spot metrics of a focused map")
{
    const UniformPlanarArray arr(20, 20, 0.5 * test::lambda, test::lambda);
    const Point3 dfp{0, 0.5, 0};
    const auto g = SamplingGrid::plane({0, 0.5, 0}, test::axis({1, 0, 0}, -0.2, 0.2, 81),
                                       test::axis({0, 0, 1}, -0.2, 0.2, 81));
    const auto map = evaluate_field(arr, mrt_weights(steering_vector(arr, dfp)), g);
    const auto s = spot_metrics(map, dfp);
    CHECK(distance(s.peak_location, dfp) < 1e-12);
    CHECK(s.num_significant_peaks == 1);
    REQUIRE(s.bfr);
    CHECK(s.bfr->radius_m > 0.0);
    REQUIRE(s.hpbw_m);
    CHECK(*s.hpbw_m > 0.0);
}
