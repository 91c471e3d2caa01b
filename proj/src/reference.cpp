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

#include "nearfocus/reference.hpp"
#include "nearfocus/error.hpp"

#include <numbers>

namespace nearfocus::reference
{
    double exhaustive_max_power(const std::vector<cplx> &channel, unsigned bits)
    {
        const std::size_t n = channel.size();
        if (n == 0 || bits == 0 || n * bits > 24)
            throw Error(ErrorCode::InvalidArgument, "exhaustive search limited to 2^24 phase combinations");
        const std::size_t levels = std::size_t{1} << bits;
        std::vector<cplx> rotated(n * levels);
        for (std::size_t e = 0; e < n; ++e)
            for (std::size_t k = 0; k < levels; ++k)
                rotated[e * levels + k] =
                    channel[e] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                                     static_cast<double>(levels));
        const std::size_t combos = std::size_t{1} << (n * bits);
        double best = 0.0;
        for (std::size_t c = 0; c < combos; ++c)
        {
            cplx sum{0.0, 0.0};
            std::size_t code = c;
            for (std::size_t e = 0; e < n; ++e, code >>= bits)
                sum += rotated[e * levels + (code & (levels - 1))];
            best = std::max(best, std::norm(sum));
        }
        return best;
    }

    double exhaustive_max_power(const UniformPlanarArray &array, const Point3 &dfp, unsigned bits, GainModel gain)
    {
        return exhaustive_max_power(steering_vector(array, dfp, gain).entries, bits);
    }
}
