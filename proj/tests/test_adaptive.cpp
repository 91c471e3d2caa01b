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
#include "nearfocus/reference.hpp"
#include "support.hpp"

#include <mutex>
#include <numbers>
#include <set>

using namespace nearfocus;

namespace
{
    UniformPlanarArray square(std::size_t n) { return UniformPlanarArray(n, n, 0.5 * test::lambda, test::lambda); }

    // delegates to a simulated channel and records probes per tile
    class CountingFeedback final : public PowerFeedback
    {
    public:
        explicit CountingFeedback(const SimulatedFeedback &inner) : inner_(inner), probes_(inner.layout().tile_count()) {}
        const SubArrayPartition &layout() const override { return inner_.layout(); }
        unsigned phase_bits() const override { return inner_.phase_bits(); }
        PowerReading measure(std::span<const unsigned> p) const override { return inner_.measure(p); }
        TileReading probe(std::size_t tile, std::span<const unsigned> p) const override
        {
            std::lock_guard lock(mutex_);
            ++probes_[tile];
            return inner_.probe(tile, p);
        }
        std::vector<double> rough_channel_phases(double noise, std::uint64_t seed) const override
        {
            return inner_.rough_channel_phases(noise, seed);
        }
        std::size_t queries() const override { return inner_.queries(); }
        std::size_t probes(std::size_t tile) const { return probes_[tile]; }

    private:
        const SimulatedFeedback &inner_;
        mutable std::vector<std::size_t> probes_;
        mutable std::mutex mutex_;
    };
}

TEST_CASE("partition covers every element once")
{
    const SubArrayPartition p(60, 60, 6, 6);
    CHECK(p.tile_count() == 100);
    CHECK(p.tile_size() == 36);
    std::set<std::size_t> seen;
    for (std::size_t m = 0; m < p.tile_count(); ++m)
        for (std::size_t n : p.elements(m))
            CHECK(seen.insert(n).second);
    CHECK(seen.size() == 3600);
    CHECK(test::code_of([] { SubArrayPartition(60, 60, 7, 7); }) == ErrorCode::IndivisibleTiling);
}

TEST_CASE("combined power adds tile fields coherently")
{
    // a 1x2 array seen from its broadside: both elements are equidistant
    const UniformPlanarArray arr(1, 2, 0.5 * test::lambda, test::lambda);
    const SubArrayPartition layout(1, 2, 1, 1);
    const Point3 dfp{0, 0.5, 0};
    const auto a = steering_vector(arr, dfp);
    const double single = std::norm(a.entries[0]);
    const std::vector<unsigned> same{0, 0}, opposite{0, 2};
    const auto c = measure_power(arr, layout, same, 2, dfp);
    CHECK(c.combined_power == doctest::Approx(4 * single));
    CHECK(c.tile_power[0] == doctest::Approx(single));
    CHECK(c.arrival_phase[0] == doctest::Approx(c.arrival_phase[1]));
    CHECK(measure_power(arr, layout, opposite, 2, dfp).combined_power < 1e-30);
    const std::vector<unsigned> off_grid{0, 4};
    CHECK(test::code_of([&] { measure_power(arr, layout, off_grid, 2, dfp); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("synchronisation removes tile arrival phases")
{
    const SubArrayPartition layout(1, 2, 1, 1);
    const std::vector<unsigned> pre{1, 3};
    const std::vector<double> theta{std::numbers::pi / 2, -std::numbers::pi / 2};
    const auto post = synchronize(layout, pre, theta, 2);
    // 2-bit grid step is pi/2: 1 - 1 = 0 and 3 + 1 = 4 = 0 (mod 4)
    CHECK(post == std::vector<unsigned>{0, 0});
}

TEST_CASE("one element, one bit: best phase within two queries")
{
    const UniformPlanarArray arr(1, 1, 0.5 * test::lambda, test::lambda);
    const SimulatedFeedback fb(arr, {0, 0.3, 0}, SubArrayPartition(1, 1, 1, 1), 1);
    const auto r = optimize_tile(fb, 0, {0}, 10, 1);
    CHECK(r.queries <= 2);
    // phase does not change |h|^2 for a single element
    CHECK(r.power == doctest::Approx(std::norm(steering_vector(arr, {0, 0.3, 0}).entries[0])));
}

TEST_CASE("2x2, 2 bits: run matches exhaustive search")
{
    const auto arr = square(2);
    for (const Point3 dfp : {Point3{0.1, 0.6, -0.05}, Point3{-0.04, 0.12, 0.03}, Point3{0.2, 0.3, 0.1}})
    {
        const double best = reference::exhaustive_max_power(arr, dfp, 2);
        // independent brute force over 4^4 settings
        const auto h = steering_vector(arr, dfp).entries;
        double brute = 0.0;
        for (unsigned code = 0; code < 256; ++code)
        {
            cplx s{0, 0};
            for (unsigned n = 0; n < 4; ++n)
                s += h[n] * std::polar(1.0, std::numbers::pi / 2 * ((code >> (2 * n)) & 3u));
            brute = std::max(brute, std::norm(s));
        }
        CHECK(best == doctest::Approx(brute).epsilon(1e-12));
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
        {
            SimulatedFeedback fb(arr, dfp, SubArrayPartition(2, 2, 2, 2), 2);
            AdaptiveConfig cfg;
            cfg.seed = seed;
            CHECK(run_sbf(fb, cfg).final_power() == doctest::Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("tile budget is enforced")
{
    const auto arr = square(8);
    const SimulatedFeedback inner(arr, {0, 0.5, 0}, SubArrayPartition(8, 8, 4, 4), 3);
    const CountingFeedback fb(inner);
    const PhaseIndices start(16, 0);
    const auto r = optimize_tile(fb, 2, start, 5, 9);
    CHECK(r.queries == 5);
    CHECK(fb.probes(2) == 5);
    CHECK(fb.probes(0) == 0);
    AdaptiveConfig cfg;
    cfg.tile_budget = 7;
    cfg.max_epochs = 3;
    const auto run = run_sbf(fb, cfg);
    for (std::size_t m = 0; m < 4; ++m)
        CHECK(fb.probes(m) <= 7 * (run.log.size() - 1) + (m == 2 ? 5 : 0));
}

TEST_CASE("epoch logs never decrease and runs are reproducible")
{
    const auto arr = square(8);
    AdaptiveConfig cfg;
    cfg.seed = 3;
    SimulatedFeedback fa(arr, {0.05, 0.6, 0}, SubArrayPartition(8, 8, 2, 4), 3);
    SimulatedFeedback fb(arr, {0.05, 0.6, 0}, SubArrayPartition(8, 8, 2, 4), 3);
    const auto a = run_sbf(fa, cfg), b = run_sbf(fb, cfg);
    for (std::size_t k = 1; k < a.log.size(); ++k)
        CHECK(a.log[k].combined_power >= a.log[k - 1].combined_power);
    CHECK(a.post_sync == b.post_sync);
    REQUIRE(a.log.size() == b.log.size());
    for (std::size_t k = 0; k < a.log.size(); ++k)
        CHECK(a.log[k].combined_power == b.log[k].combined_power);
    CHECK(a.final_power() <= fa.quantized_mrt_bound() * 1.05);
}

TEST_CASE("converged run is a fixed point for warm start")
{
    const auto arr = square(8);
    const Point3 dfp{0, 0.6, 0};
    SimulatedFeedback fa(arr, dfp, SubArrayPartition(8, 8, 4, 4), 3);
    const auto first = run_sbf(fa, {});
    SimulatedFeedback fb(arr, dfp, SubArrayPartition(8, 8, 4, 4), 3);
    const auto warm = run_sbf(fb, {}, &first);
    CHECK(warm.init == InitMode::WarmStart);
    CHECK(warm.log.front().combined_power >= first.final_power() * (1 - 1e-12));
    CHECK(warm.final_power() >= first.final_power() * (1 - 1e-12));

    SimulatedFeedback other(arr, dfp, SubArrayPartition(8, 8, 2, 2), 3);
    CHECK(test::code_of([&] { run_sbf(other, {}, &first); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("noise-free rough CSI starts at the quantized MRT bound")
{
    const auto arr = square(8);
    SimulatedFeedback fb(arr, {0.1, 0.5, 0}, SubArrayPartition(8, 8, 4, 4), 4);
    AdaptiveConfig cfg;
    cfg.init = InitMode::RoughCsi;
    const auto run = run_sbf(fb, cfg);
    CHECK(run.log.front().combined_power >= 0.99 * fb.quantized_mrt_bound());
}

TEST_CASE("exhaustive search size limit")
{
    CHECK(test::code_of([] { reference::exhaustive_max_power(square(4), {0, 1, 0}, 2); }) ==
          ErrorCode::InvalidArgument);
}
