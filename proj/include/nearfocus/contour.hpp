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

#ifndef NEARFOCUS_CONTOUR_HPP
#define NEARFOCUS_CONTOUR_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace nearfocus
{
    using Vertex2 = std::array<double, 2>;

    struct Polyline
    {
        std::vector<Vertex2> vertices; // first vertex is not repeated at the end
        bool closed = true;
    };

    // Iso-contours of a row-major scalar field at `level` by marching squares with linear interpolation.
    // The field is treated as lying below `level` outside the window, so every contour comes back closed;
    // contours that reach the window run along its edge. Saddles are resolved by the cell-centre mean.
    std::vector<Polyline> iso_contours(const std::vector<double> &values, const std::vector<double> &axis1,
                                       const std::vector<double> &axis2, double level);

    double polygon_area(const Polyline &poly);
    bool point_in_polygon(const Polyline &poly, const Vertex2 &p);

    // Area of the region enclosed by a set of closed contours, holes subtracted by nesting depth.
    double enclosed_area(const std::vector<Polyline> &polys);
}

#endif
