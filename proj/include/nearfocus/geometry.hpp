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

#ifndef NEARFOCUS_GEOMETRY_HPP
#define NEARFOCUS_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace nearfocus
{
    inline constexpr double speed_of_light = 299792458.0; // [m/s]

    inline double wavelength_for(double frequency_hz) { return speed_of_light / frequency_hz; }

    struct Point3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        constexpr Point3 operator+(const Point3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr Point3 operator-(const Point3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr bool operator==(const Point3 &) const = default;

        double dot(const Point3 &o) const { return x * o.x + y * o.y + z * o.z; }
        double norm() const { return std::sqrt(x * x + y * y + z * z); }
        bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    };

    inline double distance(const Point3 &a, const Point3 &b) { return (a - b).norm(); }

    // Plane holding the aperture. In-plane unit vectors (u, v):
    //   XZ: (x, z), normal +y;  XY: (x, y), normal +z;  YZ: (y, z), normal +x.
    enum class ArrayPlane
    {
        XZ,
        XY,
        YZ
    };

    struct PlaneBasis
    {
        Point3 u, v, normal;
    };

    PlaneBasis plane_basis(ArrayPlane plane);

    // Uniform planar array of isotropic point elements on a regular grid centered at `center`.
    // Element (i, j) sits at center + (i - (rows-1)/2) du + (j - (cols-1)/2) dv, row-major index i*cols + j.
    class UniformPlanarArray
    {
    public:
        UniformPlanarArray(std::size_t rows, std::size_t cols, double spacing_m, double wavelength_m,
                           Point3 center = {}, ArrayPlane plane = ArrayPlane::XZ);

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        std::size_t size() const { return rows_ * cols_; }
        double spacing() const { return spacing_; }
        double wavelength() const { return wavelength_; }
        const Point3 &center() const { return center_; }
        ArrayPlane plane() const { return plane_; }

        // Aperture diameter: the grid diagonal, i.e. the largest element-to-element distance.
        double aperture_diameter() const;

        Point3 element_position(std::size_t row, std::size_t col) const;

    private:
        std::size_t rows_, cols_;
        double spacing_, wavelength_;
        Point3 center_;
        ArrayPlane plane_;
    };

    std::vector<Point3> element_positions(const UniformPlanarArray &array);

    enum class GridKind
    {
        Line,
        Plane
    };

    // One sampling axis: `samples` points from origin + start*direction to origin + stop*direction.
    struct GridAxis
    {
        Point3 direction;
        double start = 0.0;
        double stop = 0.0;
        std::size_t samples = 2;

        double coordinate(std::size_t k) const;
        double step() const { return (stop - start) / static_cast<double>(samples - 1); }
    };

    class SamplingGrid
    {
    public:
        static SamplingGrid line(Point3 origin, GridAxis axis);
        static SamplingGrid plane(Point3 origin, GridAxis axis1, GridAxis axis2);

        GridKind kind() const { return kind_; }
        const Point3 &origin() const { return origin_; }
        const std::vector<GridAxis> &axes() const { return axes_; }
        std::size_t size() const;

        // Row-major: the last axis varies fastest.
        Point3 point(std::size_t index) const;
        Point3 point(std::size_t i, std::size_t j) const;

    private:
        SamplingGrid(GridKind kind, Point3 origin, std::vector<GridAxis> axes);

        GridKind kind_;
        Point3 origin_;
        std::vector<GridAxis> axes_;
    };

    std::vector<Point3> grid_points(const SamplingGrid &grid);
}

#endif
