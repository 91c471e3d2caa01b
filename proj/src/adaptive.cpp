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

#include "nearfocus/adaptive.hpp"
#include "nearfocus/beamforming.hpp"
#include "nearfocus/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace nearfocus
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ull;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
            return x ^ (x >> 31);
        }

        std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t epoch, std::uint64_t tile)
        {
            return splitmix64(seed ^ splitmix64(epoch * 0x100000001b3ull + tile));
        }

        void check_phases(std::span<const unsigned> phases, unsigned bits)
        {
            const unsigned levels = 1u << bits;
            for (unsigned k : phases)
                if (k >= levels)
                    throw Error(ErrorCode::InvalidArgument, "phase index off the 2^b grid");
        }
    }

    SubArrayPartition::SubArrayPartition(std::size_t rows, std::size_t cols, std::size_t tile_rows,
                                         std::size_t tile_cols)
        : rows_(rows), cols_(cols), tile_rows_(tile_rows), tile_cols_(tile_cols)
    {
        if (tile_rows == 0 || tile_cols == 0 || rows % tile_rows != 0 || cols % tile_cols != 0)
            throw Error(ErrorCode::IndivisibleTiling, std::to_string(tile_rows) + "x" + std::to_string(tile_cols) +
                                                          " tiles do not divide a " + std::to_string(rows) + "x" +
                                                          std::to_string(cols) + " array");
        for (std::size_t tr = 0; tr < rows / tile_rows; ++tr)
            for (std::size_t tc = 0; tc < cols / tile_cols; ++tc)
            {
                std::vector<std::size_t> idx;
                idx.reserve(tile_rows * tile_cols);
                for (std::size_t i = 0; i < tile_rows; ++i)
                    for (std::size_t j = 0; j < tile_cols; ++j)
                        idx.push_back((tr * tile_rows + i) * cols + tc * tile_cols + j);
                tiles_.push_back(std::move(idx));
            }
    }

    SubArrayPartition partition(const UniformPlanarArray &array, std::size_t tile_rows, std::size_t tile_cols)
    {
        return SubArrayPartition(array.rows(), array.cols(), tile_rows, tile_cols);
    }

    SimulatedFeedback::SimulatedFeedback(const UniformPlanarArray &array, const Point3 &dfp, SubArrayPartition layout,
                                         unsigned phase_bits, GainModel gain)
        : channel_(steering_vector(array, dfp, gain).entries), layout_(std::move(layout)), bits_(phase_bits)
    {
        if (phase_bits == 0 || phase_bits > 16)
            throw Error(ErrorCode::InvalidArgument, "phase resolution must be between 1 and 16 bits");
        if (layout_.rows() != array.rows() || layout_.cols() != array.cols())
            throw Error(ErrorCode::ShapeMismatch, "partition does not match the array");
        for (unsigned k = 0; k < (1u << bits_); ++k)
            phasors_.push_back(std::polar(1.0, grid_phase(k, bits_)));
    }

    PowerReading SimulatedFeedback::measure(std::span<const unsigned> phases) const
    {
        if (phases.size() != channel_.size())
            throw Error(ErrorCode::LengthMismatch, "one phase per element required");
        check_phases(phases, bits_);
        queries_.fetch_add(1, std::memory_order_relaxed);
        PowerReading out;
        cplx total{0.0, 0.0};
        for (std::size_t m = 0; m < layout_.tile_count(); ++m)
        {
            cplx tile{0.0, 0.0};
            for (std::size_t n : layout_.elements(m))
                tile += channel_[n] * phasors_[phases[n]];
            out.tile_power.push_back(std::norm(tile));
            out.arrival_phase.push_back(std::arg(tile));
            total += tile;
        }
        out.combined_power = std::norm(total);
        return out;
    }

    TileReading SimulatedFeedback::probe(std::size_t tile, std::span<const unsigned> tile_phases) const
    {
        const auto &idx = layout_.elements(tile);
        if (tile_phases.size() != idx.size())
            throw Error(ErrorCode::LengthMismatch, "one phase per tile element required");
        check_phases(tile_phases, bits_);
        queries_.fetch_add(1, std::memory_order_relaxed);
        cplx sum{0.0, 0.0};
        for (std::size_t k = 0; k < idx.size(); ++k)
            sum += channel_[idx[k]] * phasors_[tile_phases[k]];
        return {std::norm(sum), std::arg(sum)};
    }

    std::vector<double> SimulatedFeedback::rough_channel_phases(double noise_rad, std::uint64_t seed) const
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> err(-noise_rad, noise_rad);
        std::vector<double> out(channel_.size());
        for (std::size_t n = 0; n < out.size(); ++n)
            out[n] = std::arg(channel_[n]) + (noise_rad > 0.0 ? err(rng) : 0.0);
        return out;
    }

    double SimulatedFeedback::quantized_mrt_bound() const
    {
        const SteeringVector a{channel_, std::vector<double>(channel_.size(), 0.0), 1.0, GainModel::Unit};
        const auto q = quantize_phases(mrt_weights(a, true), bits_);
        cplx sum{0.0, 0.0};
        for (std::size_t n = 0; n < channel_.size(); ++n)
            sum += channel_[n] * std::polar(1.0, std::arg(q.weights[n]));
        return std::norm(sum);
    }

    PowerReading measure_power(const UniformPlanarArray &array, const SubArrayPartition &layout,
                               std::span<const unsigned> phases, unsigned phase_bits, const Point3 &dfp,
                               GainModel gain)
    {
        return SimulatedFeedback(array, dfp, layout, phase_bits, gain).measure(phases);
    }

    std::size_t default_tile_budget(std::size_t tile_size, unsigned bits)
    {
        const std::size_t moves = (std::size_t{1} << bits) - 1;
        return tile_size * moves + tile_size * (tile_size - 1) / 2 * moves * moves + 1;
    }

    TileOptimization optimize_tile(const PowerFeedback &feedback, std::size_t tile, PhaseIndices tile_phases,
                                   std::size_t budget, std::uint64_t seed)
    {
        if (budget == 0)
            throw Error(ErrorCode::InvalidArgument, "tile budget must be at least one query");
        const unsigned levels = 1u << feedback.phase_bits();
        TileOptimization out;
        out.phases = std::move(tile_phases);

        auto probe = [&] {
            ++out.queries;
            return feedback.probe(tile, out.phases).power;
        };

        double best = probe();
        out.accepted_power.push_back(best);
        std::vector<std::size_t> order(out.phases.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::mt19937_64 rng(seed);

        auto try_level = [&](std::size_t n, unsigned k) {
            out.phases[n] = k;
            return probe();
        };

        bool budget_left = true;
        while (budget_left)
        {
            bool changed = false;
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t n : order)
            {
                const unsigned current = out.phases[n];
                unsigned best_level = current;
                for (unsigned k = 0; k < levels && budget_left; ++k)
                {
                    if (k == current)
                        continue;
                    if (out.queries >= budget)
                    {
                        budget_left = false;
                        break;
                    }
                    const double p = try_level(n, k);
                    if (p > best)
                    {
                        best = p;
                        best_level = k;
                    }
                }
                out.phases[n] = best_level;
                if (best_level != current)
                {
                    changed = true;
                    out.accepted_power.push_back(best);
                }
                if (!budget_left)
                    break;
            }
            if (changed || !budget_left)
                continue;

            // single-element moves are exhausted: joint moves of element pairs
            for (std::size_t a = 0; a < order.size() && budget_left && !changed; ++a)
                for (std::size_t b = a + 1; b < order.size() && budget_left && !changed; ++b)
                {
                    const std::size_t na = order[a], nb = order[b];
                    const unsigned ca = out.phases[na], cb = out.phases[nb];
                    unsigned best_a = ca, best_b = cb;
                    for (unsigned ka = 0; ka < levels && budget_left; ++ka)
                        for (unsigned kb = 0; kb < levels; ++kb)
                        {
                            if (ka == ca || kb == cb)
                                continue;
                            if (out.queries >= budget)
                            {
                                budget_left = false;
                                break;
                            }
                            out.phases[na] = ka;
                            const double p = try_level(nb, kb);
                            if (p > best)
                            {
                                best = p;
                                best_a = ka;
                                best_b = kb;
                            }
                        }
                    out.phases[na] = best_a;
                    out.phases[nb] = best_b;
                    if (best_a != ca)
                    {
                        changed = true;
                        out.accepted_power.push_back(best);
                    }
                }
            if (!changed)
                break;
        }
        out.power = best;
        return out;
    }

    PhaseIndices synchronize(const SubArrayPartition &layout, std::span<const unsigned> pre_sync,
                             const std::vector<double> &arrival_phase, unsigned bits)
    {
        if (pre_sync.size() != layout.element_count() || arrival_phase.size() != layout.tile_count())
            throw Error(ErrorCode::LengthMismatch, "synchronize needs one phase per element and one theta per tile");
        PhaseIndices out(pre_sync.begin(), pre_sync.end());
        for (std::size_t m = 0; m < layout.tile_count(); ++m)
            for (std::size_t n : layout.elements(m))
                out[n] = quantize_phase_index(grid_phase(pre_sync[n], bits) - arrival_phase[m], bits);
        return out;
    }

    std::string to_string(InitMode mode)
    {
        switch (mode)
        {
        case InitMode::Random: return "random";
        case InitMode::RoughCsi: return "rough-csi";
        case InitMode::WarmStart: return "warm-start";
        }
        return "unknown";
    }

    AdaptiveRun AdaptiveRun::synchronized() const
    {
        AdaptiveRun out = *this;
        out.post_sync = synchronize(SubArrayPartition(rows, cols, tile_rows, tile_cols), pre_sync, arrival_phase,
                                    phase_bits);
        return out;
    }

    AdaptiveRun run_sbf(const PowerFeedback &feedback, const AdaptiveConfig &config, const AdaptiveRun *warm_start)
    {
        const auto &layout = feedback.layout();
        const unsigned bits = feedback.phase_bits();
        const unsigned levels = 1u << bits;
        const std::size_t budget =
            config.tile_budget > 0 ? config.tile_budget : default_tile_budget(layout.tile_size(), bits);

        AdaptiveRun run;
        run.rows = layout.rows();
        run.cols = layout.cols();
        run.tile_rows = layout.tile_rows();
        run.tile_cols = layout.tile_cols();
        run.phase_bits = bits;
        run.rng_seed = config.seed;

        PhaseIndices phases(layout.element_count());
        if (warm_start)
        {
            const SubArrayPartition other(warm_start->rows, warm_start->cols, warm_start->tile_rows,
                                          warm_start->tile_cols);
            if (!other.same_shape(layout) || warm_start->phase_bits != bits ||
                warm_start->post_sync.size() != phases.size())
                throw Error(ErrorCode::ShapeMismatch, "warm start comes from a different partition or phase grid");
            phases = warm_start->post_sync;
            run.init = InitMode::WarmStart;
        }
        else if (config.init == InitMode::RoughCsi)
        {
            const auto est = feedback.rough_channel_phases(config.csi_noise_rad, splitmix64(config.seed));
            for (std::size_t n = 0; n < phases.size(); ++n)
                phases[n] = quantize_phase_index(-est[n], bits);
            run.init = InitMode::RoughCsi;
        }
        else
        {
            std::mt19937_64 rng(splitmix64(config.seed));
            std::uniform_int_distribution<unsigned> level(0, levels - 1);
            for (auto &k : phases)
                k = level(rng);
            run.init = InitMode::Random;
        }

        auto settle = [&](const PhaseIndices &candidate) {
            const auto before = feedback.measure(candidate);
            auto synced = synchronize(layout, candidate, before.arrival_phase, bits);
            auto after = feedback.measure(synced);
            return std::tuple{std::move(synced), before, std::move(after)};
        };

        {
            auto [synced, before, after] = settle(phases);
            run.pre_sync = phases;
            run.post_sync = std::move(synced);
            run.arrival_phase = before.arrival_phase;
            run.tile_power = after.tile_power;
            run.log.push_back({0, after.combined_power, feedback.queries()});
        }

        for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch)
        {
            const PhaseIndices snapshot = run.post_sync;
            PhaseIndices candidate = snapshot;
            const auto tiles = static_cast<std::ptrdiff_t>(layout.tile_count());
#pragma omp parallel for schedule(dynamic)
            for (std::ptrdiff_t m = 0; m < tiles; ++m)
            {
                const auto &idx = layout.elements(static_cast<std::size_t>(m));
                PhaseIndices local(idx.size());
                for (std::size_t k = 0; k < idx.size(); ++k)
                    local[k] = snapshot[idx[k]];
                auto res = optimize_tile(feedback, static_cast<std::size_t>(m), std::move(local), budget,
                                         derive_seed(config.seed, epoch, static_cast<std::uint64_t>(m)));
                for (std::size_t k = 0; k < idx.size(); ++k)
                    candidate[idx[k]] = res.phases[k];
            }

            auto [synced, before, after] = settle(candidate);
            const double previous = run.log.back().combined_power;
            if (after.combined_power >= previous)
            {
                run.pre_sync = std::move(candidate);
                run.post_sync = std::move(synced);
                run.arrival_phase = before.arrival_phase;
                run.tile_power = after.tile_power;
                run.log.push_back({epoch, after.combined_power, feedback.queries()});
            }
            else
            {
                run.log.push_back({epoch, previous, feedback.queries()});
            }

            if (epoch >= config.stall_epochs)
            {
                const double ref = run.log[epoch - config.stall_epochs].combined_power;
                if (run.log.back().combined_power - ref <= config.stall_tolerance * ref)
                    break;
            }
        }
        return run;
    }

    std::size_t epochs_to_fraction(const AdaptiveRun &run, double fraction)
    {
        const double target = fraction * run.final_power();
        for (const auto &rec : run.log)
            if (rec.combined_power >= target)
                return rec.epoch;
        return run.log.empty() ? 0 : run.log.back().epoch;
    }
}
