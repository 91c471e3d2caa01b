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

#ifndef NEARFOCUS_REFERENCE_HPP
#define NEARFOCUS_REFERENCE_HPP

#include "nearfocus/channel.hpp"

#include <vector>

namespace nearfocus::reference
{
    // Exhaustive search over all (2^bits)^N unit-magnitude phase settings for the largest |sum a_n e^{j phi_n}|^2.
    // Only feasible for tiny arrays; throws InvalidArgument above 2^24 combinations.
    double exhaustive_max_power(const std::vector<cplx> &channel, unsigned bits);

    double exhaustive_max_power(const UniformPlanarArray &array, const Point3 &dfp, unsigned bits,
                                GainModel gain = GainModel::InverseDistance);
}

#endif
