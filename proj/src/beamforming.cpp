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
#include "nearfocus/error.hpp"

#include <cmath>
#include <numbers>

namespace nearfocus
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        constexpr double duplicate_tolerance_m = 1e-6;

        std::vector<cplx> sum_chains(const std::vector<std::vector<cplx>> &chains)
        {
            std::vector<cplx> out(chains.front().size(), cplx{0.0, 0.0});
            for (const auto &c : chains)
                for (std::size_t n = 0; n < out.size(); ++n)
                    out[n] += c[n];
            return out;
        }
    }

    double wrap_phase(double phase)
    {
        double w = std::fmod(phase, two_pi);
        if (w < 0.0)
            w += two_pi;
        return w >= two_pi ? 0.0 : w;
    }

    unsigned quantize_phase_index(double phase, unsigned bits)
    {
        if (bits == 0 || bits > 16)
            throw Error(ErrorCode::InvalidArgument, "phase resolution must be between 1 and 16 bits");
        const unsigned levels = 1u << bits;
        const double scaled = wrap_phase(phase) / (two_pi / levels);
        return static_cast<unsigned>(std::floor(scaled + 0.5)) % levels;
    }

    double grid_phase(unsigned index, unsigned bits)
    {
        const unsigned levels = 1u << bits;
        return two_pi * static_cast<double>(index % levels) / static_cast<double>(levels);
    }

    BeamWeights mrt_weights(const SteeringVector &a, bool phase_only)
    {
        if (a.size() == 0)
            throw Error(ErrorCode::InvalidArgument, "empty steering vector");
        std::vector<cplx> w(a.size());
        if (phase_only)
        {
            const double mag = 1.0 / std::sqrt(static_cast<double>(a.size()));
            for (std::size_t n = 0; n < a.size(); ++n)
                w[n] = std::polar(mag, -std::arg(a.entries[n]));
        }
        else
        {
            const auto an = a.normalized();
            for (std::size_t n = 0; n < a.size(); ++n)
                w[n] = std::conj(an[n]);
        }
        return BeamWeights{w, {w}, std::nullopt};
    }

    BeamWeights multi_focal_weights(const std::vector<SteeringVector> &steering,
                                    const std::vector<Point3> &focal_points, std::vector<double> stream_powers)
    {
        if (steering.empty())
            throw Error(ErrorCode::InvalidArgument, "multi-focal beamforming needs at least one focal point");
        if (focal_points.size() != steering.size())
            throw Error(ErrorCode::LengthMismatch, "one focal point per steering vector required");
        for (std::size_t i = 0; i < focal_points.size(); ++i)
            for (std::size_t j = i + 1; j < focal_points.size(); ++j)
                if (distance(focal_points[i], focal_points[j]) < duplicate_tolerance_m)
                    throw Error(ErrorCode::DuplicateFocalPoint,
                                "focal points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
        const std::size_t m_chains = steering.size();
        if (stream_powers.empty())
            stream_powers.assign(m_chains, 1.0 / static_cast<double>(m_chains));
        if (stream_powers.size() != m_chains)
            throw Error(ErrorCode::LengthMismatch, "one stream power per focal point required");

        BeamWeights out;
        for (std::size_t m = 0; m < m_chains; ++m)
        {
            if (steering[m].size() != steering.front().size())
                throw Error(ErrorCode::LengthMismatch, "steering vectors differ in length");
            if (!(stream_powers[m] >= 0.0))
                throw Error(ErrorCode::InvalidArgument, "stream powers must be nonnegative");
            auto chain = mrt_weights(steering[m]).weights;
            const double scale = std::sqrt(stream_powers[m]);
            for (auto &c : chain)
                c *= scale;
            out.per_chain.push_back(std::move(chain));
        }
        out.weights = sum_chains(out.per_chain);
        return out;
    }

    BeamWeights multi_focal_weights(const UniformPlanarArray &array, const std::vector<Point3> &focal_points,
                                    GainModel gain, std::vector<double> stream_powers)
    {
        std::vector<SteeringVector> steering;
        steering.reserve(focal_points.size());
        for (const auto &p : focal_points)
            steering.push_back(steering_vector(array, p, gain));
        return multi_focal_weights(steering, focal_points, std::move(stream_powers));
    }

    BeamWeights quantize_phases(const BeamWeights &w, unsigned bits)
    {
        if (bits == 0)
            throw Error(ErrorCode::InvalidArgument, "phase quantization needs at least one bit");
        BeamWeights out;
        out.phase_bits = bits;
        out.per_chain.reserve(w.per_chain.size());
        for (const auto &chain : w.per_chain)
        {
            std::vector<cplx> q(chain.size());
            for (std::size_t n = 0; n < chain.size(); ++n)
            {
                const double mag = std::abs(chain[n]);
                q[n] = std::polar(mag, grid_phase(quantize_phase_index(std::arg(chain[n]), bits), bits));
            }
            out.per_chain.push_back(std::move(q));
        }
        out.weights = out.per_chain.empty() ? std::vector<cplx>{} : sum_chains(out.per_chain);
        return out;
    }

    cplx array_response(const std::vector<cplx> &a, const std::vector<cplx> &w)
    {
        if (a.size() != w.size())
            throw Error(ErrorCode::LengthMismatch, "response and weight vectors differ in length");
        cplx acc{0.0, 0.0};
        for (std::size_t n = 0; n < a.size(); ++n)
            acc += a[n] * w[n];
        return acc;
    }
}
