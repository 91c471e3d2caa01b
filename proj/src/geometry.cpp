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

#include "nearfocus/geometry.hpp"
#include "nearfocus/error.hpp"

#include <string>

namespace nearfocus
{
    PlaneBasis plane_basis(ArrayPlane plane)
    {
        switch (plane)
        {
        case ArrayPlane::XZ: return {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}};
        case ArrayPlane::XY: return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        case ArrayPlane::YZ: return {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
        }
        throw Error(ErrorCode::InvalidArgument, "unknown array plane");
    }

    UniformPlanarArray::UniformPlanarArray(std::size_t rows, std::size_t cols, double spacing_m,
                                           double wavelength_m, Point3 center, ArrayPlane plane)
        : rows_(rows), cols_(cols), spacing_(spacing_m), wavelength_(wavelength_m), center_(center), plane_(plane)
    {
        if (rows == 0 || cols == 0)
            throw Error(ErrorCode::InvalidArgument, "array needs at least one row and one column");
        if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
            throw Error(ErrorCode::InvalidArgument, "spacing must be positive and finite");
        if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
            throw Error(ErrorCode::InvalidArgument, "wavelength must be positive and finite");
        if (!center.finite())
            throw Error(ErrorCode::InvalidArgument, "array center must be finite");
    }

    double UniformPlanarArray::aperture_diameter() const
    {
        const double r = static_cast<double>(rows_ - 1), c = static_cast<double>(cols_ - 1);
        return spacing_ * std::sqrt(r * r + c * c);
    }

    Point3 UniformPlanarArray::element_position(std::size_t row, std::size_t col) const
    {
        const auto basis = plane_basis(plane_);
        const double du = (static_cast<double>(row) - 0.5 * static_cast<double>(rows_ - 1)) * spacing_;
        const double dv = (static_cast<double>(col) - 0.5 * static_cast<double>(cols_ - 1)) * spacing_;
        return center_ + basis.u * du + basis.v * dv;
    }

    std::vector<Point3> element_positions(const UniformPlanarArray &array)
    {
        std::vector<Point3> out;
        out.reserve(array.size());
        for (std::size_t i = 0; i < array.rows(); ++i)
            for (std::size_t j = 0; j < array.cols(); ++j)
                out.push_back(array.element_position(i, j));
        return out;
    }

    double GridAxis::coordinate(std::size_t k) const
    {
        if (k + 1 == samples)
            return stop; // exact endpoint
        return start + step() * static_cast<double>(k);
    }

    namespace
    {
        void validate_axis(const GridAxis &axis)
        {
            if (axis.samples < 2)
                throw Error(ErrorCode::InvalidArgument, "grid resolution must be at least 2 per axis");
            if (!std::isfinite(axis.start) || !std::isfinite(axis.stop) || !(axis.stop > axis.start))
                throw Error(ErrorCode::InvalidArgument, "grid axis extent must be finite with stop > start");
            if (std::abs(axis.direction.norm() - 1.0) > 1e-12)
                throw Error(ErrorCode::InvalidArgument, "grid axis direction must be a unit vector");
        }
    }

    SamplingGrid::SamplingGrid(GridKind kind, Point3 origin, std::vector<GridAxis> axes)
        : kind_(kind), origin_(origin), axes_(std::move(axes))
    {
        if (!origin_.finite())
            throw Error(ErrorCode::InvalidArgument, "grid origin must be finite");
        for (const auto &a : axes_)
            validate_axis(a);
        if (axes_.size() == 2 && std::abs(axes_[0].direction.dot(axes_[1].direction)) > 1e-12)
            throw Error(ErrorCode::InvalidArgument, "grid axes must be orthogonal");
    }

    SamplingGrid SamplingGrid::line(Point3 origin, GridAxis axis)
    {
        return SamplingGrid(GridKind::Line, origin, {axis});
    }

    SamplingGrid SamplingGrid::plane(Point3 origin, GridAxis axis1, GridAxis axis2)
    {
        return SamplingGrid(GridKind::Plane, origin, {axis1, axis2});
    }

    std::size_t SamplingGrid::size() const
    {
        std::size_t n = 1;
        for (const auto &a : axes_)
            n *= a.samples;
        return n;
    }

    Point3 SamplingGrid::point(std::size_t i, std::size_t j) const
    {
        const auto &a = axes_[0];
        const auto &b = axes_[1];
        return origin_ + a.direction * a.coordinate(i) + b.direction * b.coordinate(j);
    }

    Point3 SamplingGrid::point(std::size_t index) const
    {
        if (kind_ == GridKind::Line)
            return origin_ + axes_[0].direction * axes_[0].coordinate(index);
        const std::size_t n2 = axes_[1].samples;
        return point(index / n2, index % n2);
    }

    std::vector<Point3> grid_points(const SamplingGrid &grid)
    {
        std::vector<Point3> out;
        out.reserve(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k)
            out.push_back(grid.point(k));
        return out;
    }
}
