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
#include "nearfocus/error.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace nearfocus
{
    namespace
    {
        constexpr double far_below = -1e300;

        struct Segment
        {
            std::size_t a, b; // edge keys
        };
    }

    std::vector<Polyline> iso_contours(const std::vector<double> &values, const std::vector<double> &axis1,
                                       const std::vector<double> &axis2, double level)
    {
        const std::size_t n1 = axis1.size(), n2 = axis2.size();
        if (values.size() != n1 * n2)
            throw Error(ErrorCode::LengthMismatch, "field size does not match the axes");
        if (n1 < 2 || n2 < 2)
            throw Error(ErrorCode::GridTooSmall, "contouring needs at least 2 samples per axis");

        // Padded lattice: one ring of far-below samples sharing the coordinates of the window edge.
        const std::size_t p1 = n1 + 2, p2 = n2 + 2;
        std::vector<double> v(p1 * p2, far_below), x1(p1), x2(p2);
        for (std::size_t i = 0; i < p1; ++i)
            x1[i] = axis1[std::min(n1 - 1, i == 0 ? 0 : i - 1)];
        for (std::size_t j = 0; j < p2; ++j)
            x2[j] = axis2[std::min(n2 - 1, j == 0 ? 0 : j - 1)];
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j)
            {
                const double s = values[i * n2 + j];
                v[(i + 1) * p2 + j + 1] = std::isnan(s) ? far_below : std::max(s, far_below);
            }

        auto inside = [&](std::size_t i, std::size_t j) { return v[i * p2 + j] >= level; };
        // Edge keys: 2*node + 0 for the edge (i,j)-(i+1,j), 2*node + 1 for (i,j)-(i,j+1).
        auto edge_key = [&](std::size_t i, std::size_t j, int dir) { return 2 * (i * p2 + j) + dir; };

        std::unordered_map<std::size_t, Vertex2> crossing;
        auto vertex_for = [&](std::size_t key) {
            if (auto it = crossing.find(key); it != crossing.end())
                return;
            const std::size_t node = key / 2;
            const std::size_t i = node / p2, j = node % p2;
            const std::size_t ib = (key % 2 == 0) ? i + 1 : i, jb = (key % 2 == 0) ? j : j + 1;
            const double va = v[i * p2 + j], vb = v[ib * p2 + jb];
            const double t = (level - va) / (vb - va);
            crossing[key] = {x1[i] + t * (x1[ib] - x1[i]), x2[j] + t * (x2[jb] - x2[j])};
        };

        std::vector<Segment> segments;
        for (std::size_t i = 0; i + 1 < p1; ++i)
        {
            for (std::size_t j = 0; j + 1 < p2; ++j)
            {
                // corners c0=(i,j) c1=(i+1,j) c2=(i+1,j+1) c3=(i,j+1); edges E0=c0c1 E1=c1c2 E2=c3c2 E3=c0c3
                const unsigned cell = (inside(i, j) ? 1u : 0u) | (inside(i + 1, j) ? 2u : 0u) |
                                      (inside(i + 1, j + 1) ? 4u : 0u) | (inside(i, j + 1) ? 8u : 0u);
                if (cell == 0 || cell == 15)
                    continue;
                const std::size_t e[4] = {edge_key(i, j, 0), edge_key(i + 1, j, 1), edge_key(i, j + 1, 0),
                                          edge_key(i, j, 1)};
                auto emit = [&](int a, int b) {
                    vertex_for(e[a]);
                    vertex_for(e[b]);
                    segments.push_back({e[a], e[b]});
                };
                if (cell == 5 || cell == 10)
                {
                    const double centre =
                        0.25 * (v[i * p2 + j] + v[(i + 1) * p2 + j] + v[(i + 1) * p2 + j + 1] + v[i * p2 + j + 1]);
                    const bool centre_in = centre >= level;
                    // isolate c1 and c3 or c0 and c2
                    const bool isolate_odd = (cell == 5) == centre_in;
                    if (isolate_odd)
                    {
                        emit(0, 1);
                        emit(2, 3);
                    }
                    else
                    {
                        emit(3, 0);
                        emit(1, 2);
                    }
                    continue;
                }
                const bool c0 = cell & 1u, c1 = cell & 2u, c2 = cell & 4u, c3 = cell & 8u;
                int found[2], k = 0;
                if (c0 != c1) found[k++] = 0;
                if (c1 != c2) found[k++] = 1;
                if (c3 != c2) found[k++] = 2;
                if (c0 != c3) found[k++] = 3;
                emit(found[0], found[1]);
            }
        }

        std::unordered_map<std::size_t, std::vector<std::size_t>> by_edge;
        for (std::size_t s = 0; s < segments.size(); ++s)
        {
            by_edge[segments[s].a].push_back(s);
            by_edge[segments[s].b].push_back(s);
        }

        std::vector<bool> used(segments.size(), false);
        std::vector<Polyline> out;
        for (std::size_t start = 0; start < segments.size(); ++start)
        {
            if (used[start])
                continue;
            Polyline poly;
            std::size_t seg = start;
            std::size_t from = segments[start].a;
            used[seg] = true;
            poly.vertices.push_back(crossing[from]);
            std::size_t at = segments[seg].b;
            while (at != from)
            {
                const auto &v2 = crossing[at];
                if (poly.vertices.back() != v2)
                    poly.vertices.push_back(v2);
                std::size_t next = segments.size();
                for (std::size_t cand : by_edge[at])
                    if (!used[cand])
                        next = cand;
                if (next == segments.size())
                    break;
                used[next] = true;
                at = segments[next].a == at ? segments[next].b : segments[next].a;
            }
            if (poly.vertices.size() > 1 && poly.vertices.front() == poly.vertices.back())
                poly.vertices.pop_back();
            if (poly.vertices.size() >= 3)
                out.push_back(std::move(poly));
        }
        return out;
    }

    double polygon_area(const Polyline &poly)
    {
        double twice = 0.0;
        const auto &p = poly.vertices;
        for (std::size_t k = 0; k < p.size(); ++k)
        {
            const auto &a = p[k];
            const auto &b = p[(k + 1) % p.size()];
            twice += a[0] * b[1] - b[0] * a[1];
        }
        return 0.5 * std::abs(twice);
    }

    bool point_in_polygon(const Polyline &poly, const Vertex2 &q)
    {
        bool in = false;
        const auto &p = poly.vertices;
        for (std::size_t k = 0, prev = p.size() - 1; k < p.size(); prev = k++)
        {
            const auto &a = p[k];
            const auto &b = p[prev];
            if ((a[1] > q[1]) != (b[1] > q[1]) && q[0] < (b[0] - a[0]) * (q[1] - a[1]) / (b[1] - a[1]) + a[0])
                in = !in;
        }
        return in;
    }

    double enclosed_area(const std::vector<Polyline> &polys)
    {
        double area = 0.0;
        for (std::size_t k = 0; k < polys.size(); ++k)
        {
            std::size_t depth = 0;
            for (std::size_t other = 0; other < polys.size(); ++other)
                if (other != k && point_in_polygon(polys[other], polys[k].vertices.front()))
                    ++depth;
            area += (depth % 2 == 0 ? 1.0 : -1.0) * polygon_area(polys[k]);
        }
        return area;
    }
}
