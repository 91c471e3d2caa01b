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
#include "nearfocus/error.hpp"

#include <cmath>
#include <limits>

namespace nearfocus
{
    double to_db(double ratio)
    {
        return ratio > 0.0 ? 10.0 * std::log10(ratio) : -std::numeric_limits<double>::infinity();
    }

    double from_db(double db) { return std::pow(10.0, db / 10.0); }

    double stream_sinr(const std::vector<double> &received, std::size_t m, double noise_power)
    {
        double interference = 0.0;
        for (std::size_t k = 0; k < received.size(); ++k)
            if (k != m)
                interference += received[k];
        return received[m] / (interference + noise_power);
    }

    Calibration calibrate_power(const SecurityScenario &sc)
    {
        const std::size_t m_streams = sc.dfps.size();
        if (m_streams == 0)
            throw Error(ErrorCode::InvalidArgument, "security scenario needs at least one DFP");
        if (!(sc.noise_power > 0.0))
            throw Error(ErrorCode::InvalidArgument, "noise power must be positive");

        Calibration cal;
        cal.weights = multi_focal_weights(sc.array, sc.dfps, sc.gain, std::vector<double>(m_streams, 1.0));

        // coupling[k][m] = s_m(dfp_k), unit transmit power per stream
        std::vector<std::vector<double>> coupling(m_streams, std::vector<double>(m_streams));
        for (std::size_t k = 0; k < m_streams; ++k)
        {
            const auto a = steering_vector(sc.array, sc.dfps[k], sc.gain);
            for (std::size_t m = 0; m < m_streams; ++m)
                coupling[k][m] = std::norm(array_response(a.entries, cal.weights.per_chain[m]));
        }

        const double gamma = from_db(sc.target_snr_db);
        std::vector<double> p(m_streams, 0.0), next(m_streams);
        bool settled = false;
        for (std::size_t it = 1; it <= calibration_max_iterations; ++it)
        {
            double change = 0.0;
            for (std::size_t m = 0; m < m_streams; ++m)
            {
                double interference = sc.noise_power;
                for (std::size_t k = 0; k < m_streams; ++k)
                    if (k != m)
                        interference += p[k] * coupling[m][k];
                next[m] = gamma * interference / coupling[m][m];
                if (!std::isfinite(next[m]))
                    throw Error(ErrorCode::CalibrationDiverged, "stream power became non-finite");
                change = std::max(change, std::abs(next[m] - p[m]) / next[m]);
            }
            p.swap(next);
            cal.iterations = it;
            if (change < 1e-13)
            {
                settled = true;
                break;
            }
        }
        if (!settled)
            throw Error(ErrorCode::CalibrationDiverged,
                        "stream powers did not settle; focal points couple too strongly");

        cal.stream_powers = p;
        for (std::size_t m = 0; m < m_streams; ++m)
        {
            std::vector<double> received(m_streams);
            for (std::size_t k = 0; k < m_streams; ++k)
                received[k] = p[k] * coupling[m][k];
            const double db = to_db(stream_sinr(received, m, sc.noise_power));
            cal.sinr_at_dfp_db.push_back(db);
            cal.max_residual_db = std::max(cal.max_residual_db, std::abs(db - sc.target_snr_db));
        }
        return cal;
    }

    SecurityMap security_map(const SecurityScenario &sc, const Calibration &cal)
    {
        const std::size_t m_streams = sc.dfps.size();
        if (cal.stream_powers.size() != m_streams)
            throw Error(ErrorCode::LengthMismatch, "calibration does not match the scenario's DFPs");
        const auto field = evaluate_field(sc.array, cal.weights, sc.grid, sc.gain);
        const std::size_t n = sc.grid.size();

        SecurityMap out{sc.grid, std::vector<std::vector<double>>(m_streams, std::vector<double>(n)),
                        std::vector<double>(n), std::vector<bool>(n), 0.0, sc.threshold_db};
        std::size_t secure_count = 0;
        std::vector<double> received(m_streams);
        for (std::size_t k = 0; k < n; ++k)
        {
            for (std::size_t m = 0; m < m_streams; ++m)
                received[m] = cal.stream_powers[m] * field.per_stream_power[m][k];
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < m_streams; ++m)
            {
                const double db = to_db(stream_sinr(received, m, sc.noise_power));
                out.sinr_db[m][k] = db;
                best = std::max(best, db);
            }
            out.max_sinr_db[k] = best;
            out.secure[k] = best < sc.threshold_db;
            secure_count += out.secure[k] ? 1 : 0;
        }
        out.secure_area_fraction = static_cast<double>(secure_count) / static_cast<double>(n);
        return out;
    }

    SecurityMap security_map(const SecurityScenario &sc) { return security_map(sc, calibrate_power(sc)); }

    std::vector<Polyline> secure_boundary(const SecurityMap &map)
    {
        if (map.grid.kind() != GridKind::Plane)
            throw Error(ErrorCode::InvalidArgument, "secure boundary needs a 2D map");
        const auto &ax = map.grid.axes();
        std::vector<double> c1(ax[0].samples), c2(ax[1].samples);
        for (std::size_t i = 0; i < c1.size(); ++i)
            c1[i] = ax[0].coordinate(i);
        for (std::size_t j = 0; j < c2.size(); ++j)
            c2[j] = ax[1].coordinate(j);
        return iso_contours(map.max_sinr_db, c1, c2, map.threshold_db);
    }

    Vertex2 grid_coordinates(const SamplingGrid &grid, const Point3 &p)
    {
        const Point3 rel = p - grid.origin();
        return {rel.dot(grid.axes()[0].direction), grid.axes().size() > 1 ? rel.dot(grid.axes()[1].direction) : 0.0};
    }
}
