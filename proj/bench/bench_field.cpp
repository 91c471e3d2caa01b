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
#include "nearfocus/field.hpp"

#include <benchmark/benchmark.h>

using namespace nearfocus;

namespace
{
    struct Setup
    {
        UniformPlanarArray array;
        BeamWeights weights;
        SamplingGrid grid;
    };

    Setup make(std::size_t side, std::size_t samples)
    {
        const double lam = wavelength_for(28e9);
        UniformPlanarArray a(side, side, 0.5 * lam, lam);
        auto w = mrt_weights(steering_vector(a, {0, 1, 0}));
        auto g = SamplingGrid::plane({0, 1, 0}, {{1, 0, 0}, -0.5, 0.5, samples}, {{0, 1, 0}, -0.5, 0.5, samples});
        return {a, std::move(w), std::move(g)};
    }

    void field_parallel(benchmark::State &state)
    {
        const auto s = make(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
        for (auto _ : state)
            benchmark::DoNotOptimize(evaluate_field(s.array, s.weights, s.grid));
        state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.grid.size() * s.array.size()));
    }

    void field_serial(benchmark::State &state)
    {
        const auto s = make(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
        for (auto _ : state)
            benchmark::DoNotOptimize(evaluate_field_serial(s.array, s.weights, s.grid));
        state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.grid.size() * s.array.size()));
    }
}

BENCHMARK(field_parallel)->Args({16, 101})->Args({60, 101})->Unit(benchmark::kMillisecond);
BENCHMARK(field_serial)->Args({16, 101})->Args({60, 101})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
