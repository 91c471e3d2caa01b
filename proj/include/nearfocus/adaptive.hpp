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

#ifndef NEARFOCUS_ADAPTIVE_HPP
#define NEARFOCUS_ADAPTIVE_HPP

#include "nearfocus/channel.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nearfocus
{
    // Rectangular tiling of the parent array into congruent sub-arrays, row-major tile order.
    class SubArrayPartition
    {
    public:
        SubArrayPartition(std::size_t rows, std::size_t cols, std::size_t tile_rows, std::size_t tile_cols);

        std::size_t tile_count() const { return tiles_.size(); }
        std::size_t tile_size() const { return tile_rows_ * tile_cols_; }
        std::size_t element_count() const { return rows_ * cols_; }
        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        std::size_t tile_rows() const { return tile_rows_; }
        std::size_t tile_cols() const { return tile_cols_; }

        // Parent (row-major) element indices of tile m, row-major within the tile.
        const std::vector<std::size_t> &elements(std::size_t tile) const { return tiles_[tile]; }

        bool same_shape(const SubArrayPartition &o) const
        {
            return rows_ == o.rows_ && cols_ == o.cols_ && tile_rows_ == o.tile_rows_ && tile_cols_ == o.tile_cols_;
        }

    private:
        std::size_t rows_, cols_, tile_rows_, tile_cols_;
        std::vector<std::vector<std::size_t>> tiles_;
    };

    // Throws IndivisibleTiling when the tile dimensions do not divide the array dimensions.
    SubArrayPartition partition(const UniformPlanarArray &array, std::size_t tile_rows, std::size_t tile_cols);

    // Phases are stored as indices k on the grid 2 pi k / 2^bits.
    using PhaseIndices = std::vector<unsigned>;

    struct TileReading
    {
        double power = 0.0;         // p_m
        double arrival_phase = 0.0; // theta_m
    };

    struct PowerReading
    {
        double combined_power = 0.0;
        std::vector<double> tile_power;    // p_m
        std::vector<double> arrival_phase; // theta_m
    };

    // UE-side power feedback. This is the only channel access the optimizer has.
    class PowerFeedback
    {
    public:
        virtual ~PowerFeedback() = default;

        virtual const SubArrayPartition &layout() const = 0;
        virtual unsigned phase_bits() const = 0;

        // Report for every tile; phases in parent element order.
        virtual PowerReading measure(std::span<const unsigned> phases) const = 0;
        // Report for a single tile driven by tile-local phases.
        virtual TileReading probe(std::size_t tile, std::span<const unsigned> tile_phases) const = 0;
        // Rough channel-phase estimates h~ with per-element uniform error in [-noise_rad, noise_rad].
        virtual std::vector<double> rough_channel_phases(double noise_rad, std::uint64_t seed) const = 0;

        virtual std::size_t queries() const = 0;
    };

    class SimulatedFeedback final : public PowerFeedback
    {
    public:
        SimulatedFeedback(const UniformPlanarArray &array, const Point3 &dfp, SubArrayPartition layout,
                          unsigned phase_bits, GainModel gain = GainModel::InverseDistance);

        const SubArrayPartition &layout() const override { return layout_; }
        unsigned phase_bits() const override { return bits_; }
        PowerReading measure(std::span<const unsigned> phases) const override;
        TileReading probe(std::size_t tile, std::span<const unsigned> tile_phases) const override;
        std::vector<double> rough_channel_phases(double noise_rad, std::uint64_t seed) const override;
        std::size_t queries() const override { return queries_.load(); }

        // Reference only, never used by the optimizer: DFP power of quantize_phases(mrt_weights(a, phase_only))
        // with unit-magnitude elements.
        double quantized_mrt_bound() const;

    private:
        std::vector<cplx> channel_;
        SubArrayPartition layout_;
        unsigned bits_;
        std::vector<cplx> phasors_;
        mutable std::atomic<std::size_t> queries_{0};
    };

    // One-shot simulated UE report.
    PowerReading measure_power(const UniformPlanarArray &array, const SubArrayPartition &layout,
                               std::span<const unsigned> phases, unsigned phase_bits, const Point3 &dfp,
                               GainModel gain = GainModel::InverseDistance);

    struct TileOptimization
    {
        PhaseIndices phases;                // tile-local
        double power = 0.0;
        std::size_t queries = 0;
        std::vector<double> accepted_power; // p_m after the initial probe and after every accepted move
    };

    // Greedy coordinate ascent on p_m: elements in seeded-random order, every phase level tried, the best kept.
    // Passes repeat until a pass changes nothing or the query budget is spent.
    // One single-element sweep plus one pair sweep: n (L - 1) + n (n - 1) / 2 (L - 1)^2 + 1 queries.
    std::size_t default_tile_budget(std::size_t tile_size, unsigned bits);

    // Coordinate ascent on one tile: every level of every element, then joint moves of element pairs
    // once single moves stall. Only strict improvements are kept.
    TileOptimization optimize_tile(const PowerFeedback &feedback, std::size_t tile, PhaseIndices tile_phases,
                                   std::size_t budget, std::uint64_t seed);

    // phi_mn = phi~_mn - theta_m rounded to the phase grid.
    PhaseIndices synchronize(const SubArrayPartition &layout, std::span<const unsigned> pre_sync,
                             const std::vector<double> &arrival_phase, unsigned bits);

    enum class InitMode
    {
        Random,
        RoughCsi,
        WarmStart
    };

    std::string to_string(InitMode mode);

    struct EpochRecord
    {
        std::size_t epoch = 0;
        double combined_power = 0.0;
        std::size_t queries = 0; // cumulative feedback queries
    };

    struct AdaptiveConfig
    {
        std::size_t tile_budget = 0;   // queries per tile per epoch, 0 = default_tile_budget
        std::size_t max_epochs = 50;
        InitMode init = InitMode::Random;
        double csi_noise_rad = 0.0;    // RoughCsi only
        std::uint64_t seed = 1;
        double stall_tolerance = 1e-4; // relative improvement over stall_epochs epochs
        std::size_t stall_epochs = 3;
    };

    struct AdaptiveRun
    {
        std::size_t rows = 0, cols = 0, tile_rows = 0, tile_cols = 0;
        unsigned phase_bits = 4;
        PhaseIndices pre_sync;         // phi~
        PhaseIndices post_sync;        // phi
        std::vector<double> tile_power;
        std::vector<double> arrival_phase;
        std::vector<EpochRecord> log;
        std::uint64_t rng_seed = 0;
        InitMode init = InitMode::Random;

        double final_power() const { return log.empty() ? 0.0 : log.back().combined_power; }
        // Sync step applied to pre_sync with the stored arrival phases.
        AdaptiveRun synchronized() const;
    };

    // Lockstep epochs: all tiles optimise against the same snapshot, then a barrier, then synchronize.
    // An epoch is kept only when it does not lower the combined power. Throws ShapeMismatch for an
    // incompatible warm start.
    AdaptiveRun run_sbf(const PowerFeedback &feedback, const AdaptiveConfig &config,
                        const AdaptiveRun *warm_start = nullptr);

    // First epoch whose combined power reaches `fraction` of the run's final power.
    std::size_t epochs_to_fraction(const AdaptiveRun &run, double fraction);
}

#endif
