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

#ifndef NEARFOCUS_BEAMFORMING_HPP
#define NEARFOCUS_BEAMFORMING_HPP

#include "nearfocus/channel.hpp"

#include <optional>
#include <vector>

namespace nearfocus
{
    struct BeamWeights
    {
        std::vector<cplx> weights;                // element-wise sum of the per-chain vectors
        std::vector<std::vector<cplx>> per_chain; // one vector per RF chain
        std::optional<unsigned> phase_bits;

        std::size_t rf_chains() const { return per_chain.size(); }
        std::size_t size() const { return weights.size(); }
    };

    // Wraps to [0, 2 pi).
    double wrap_phase(double phase);

    // Nearest index on the uniform 2^bits phase grid; exact halves go to the larger index (mod 2^bits).
    unsigned quantize_phase_index(double phase, unsigned bits);
    double grid_phase(unsigned index, unsigned bits);

    // Single-chain maximum ratio transmission: w = conj(a) / ||a||, or unit-magnitude conjugate phases
    // scaled to unit norm when phase_only is set.
    BeamWeights mrt_weights(const SteeringVector &a, bool phase_only = false);

    // One MRT chain per focal point, chain m scaled to norm sqrt(stream_powers[m]); equal split when empty.
    BeamWeights multi_focal_weights(const std::vector<SteeringVector> &steering,
                                    const std::vector<Point3> &focal_points,
                                    std::vector<double> stream_powers = {});

    BeamWeights multi_focal_weights(const UniformPlanarArray &array, const std::vector<Point3> &focal_points,
                                    GainModel gain = GainModel::InverseDistance,
                                    std::vector<double> stream_powers = {});

    // Rounds every per-chain phase to the 2^bits grid, keeps magnitudes, rebuilds the combined weights.
    BeamWeights quantize_phases(const BeamWeights &w, unsigned bits);

    // a^T w
    cplx array_response(const std::vector<cplx> &a, const std::vector<cplx> &w);
}

#endif
