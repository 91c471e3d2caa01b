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

#include "nearfocus/contour.hpp"
#include "support.hpp"

#include <numbers>

using namespace nearfocus;

namespace
{
    struct Field
    {
        std::vector<double> v, a1, a2;
    };

    template <class F> Field tabulate(double lo, double hi, std::size_t n, F f)
    {
        Field out;
        for (std::size_t k = 0; k < n; ++k)
            out.a1.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
        out.a2 = out.a1;
        for (double x : out.a1)
            for (double y : out.a2)
                out.v.push_back(f(x, y));
        return out;
    }
}

TEST_CASE("Gaussian blob gives one closed circle")
{
    const auto f = tabulate(-2, 2, 201, [](double x, double y) { return std::exp(-(x * x + y * y)); });
    const auto polys = iso_contours(f.v, f.a1, f.a2, std::exp(-1.0));
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].closed);
    CHECK(std::abs(polygon_area(polys[0])) == doctest::Approx(std::numbers::pi).epsilon(1e-3));
    CHECK(enclosed_area(polys) == doctest::Approx(std::numbers::pi).epsilon(1e-3));
    CHECK(point_in_polygon(polys[0], {0.0, 0.0}));
    CHECK_FALSE(point_in_polygon(polys[0], {1.1, 0.0}));
    for (const auto &v : polys[0].vertices)
        CHECK(std::hypot(v[0], v[1]) == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("level above the maximum gives nothing")
{
    const auto f = tabulate(-1, 1, 11, [](double x, double y) { return x + y; });
    CHECK(iso_contours(f.v, f.a1, f.a2, 5.0).empty());
}

TEST_CASE("regions touching the window close along the edge")
{
    const auto f = tabulate(0, 1, 51, [](double x, double) { return x; });
    const auto polys = iso_contours(f.v, f.a1, f.a2, 0.5);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].closed);
    CHECK(enclosed_area(polys) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("annulus subtracts its hole")
{
    const auto f = tabulate(-2, 2, 401, [](double x, double y) { return -std::abs(std::hypot(x, y) - 1.0); });
    const auto polys = iso_contours(f.v, f.a1, f.a2, -0.2);
    REQUIRE(polys.size() == 2);
    CHECK(enclosed_area(polys) == doctest::Approx(std::numbers::pi * (1.44 - 0.64)).epsilon(2e-3));
}

TEST_CASE("two separate blobs")
{
    const auto f = tabulate(-3, 3, 121, [](double x, double y) {
        return std::exp(-((x - 1.5) * (x - 1.5) + y * y)) + std::exp(-((x + 1.5) * (x + 1.5) + y * y));
    });
    const auto polys = iso_contours(f.v, f.a1, f.a2, 0.5);
    CHECK(polys.size() == 2);
}

TEST_CASE("unit square area")
{
    const Polyline sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true};
    CHECK(std::abs(polygon_area(sq)) == doctest::Approx(1.0));
    CHECK(point_in_polygon(sq, {0.5, 0.5}));
    CHECK_FALSE(point_in_polygon(sq, {1.5, 0.5}));
}
