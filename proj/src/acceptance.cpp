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

#include "nearfocus/acceptance.hpp"
#include "nearfocus/adaptive.hpp"
#include "nearfocus/commands.hpp"
#include "nearfocus/io.hpp"
#include "nearfocus/metrics.hpp"
#include "nearfocus/reference.hpp"
#include "nearfocus/security.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace nearfocus::acceptance
{
    namespace
    {
        // Pinned scenario constants and tolerances.
        const double lambda = wavelength_for(28e9);
        constexpr Point3 sweep_dfp{0.0, 1.0, -0.5};
        constexpr Point3 boresight_dfp{0.0, 1.0, 0.0};
        constexpr double hpbw_half_wavelength_m = 0.085;
        constexpr double hpbw_one_wavelength_m = 0.049;
        constexpr double hpbw_rel_tol = 0.15;
        constexpr double peak_drop_expected = 0.04;
        constexpr double peak_drop_tol = 0.03;
        constexpr double sweep_runtime_limit_s = 60.0;
        constexpr double bfr_ratio_limit = 0.5;
        constexpr double bfr_eta = 0.9;
        constexpr double correlation_limit = 0.1;
        constexpr double calibration_tol_db = 0.01;
        constexpr double adaptive_quality_ratio = 0.9;
        constexpr double transfer_fraction = 0.95;
        constexpr std::size_t seed_count = 10;
        constexpr std::size_t mrt_draws = 10000;
        constexpr double invariance_tol = 1e-9;
        constexpr double grating_threshold = 0.5;
        constexpr std::size_t map_samples = 201;

        using Clock = std::chrono::steady_clock;

        std::string fmt(double v) { return io::format_number(v); }
        std::string cm(double v) { return io::format_number(v * 100.0) + " cm"; }

        double median(std::vector<double> v)
        {
            std::sort(v.begin(), v.end());
            const std::size_t n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        }

        GridAxis axis(Point3 dir, double start, double stop, std::size_t n) { return {dir, start, stop, n}; }

        // x in [-0.5, 0.5], y in [0.5, 1.5] on z = 0: the standard window around (0, 1, 0).
        SamplingGrid standard_window()
        {
            return SamplingGrid::plane({0.0, 1.0, 0.0}, axis({1, 0, 0}, -0.5, 0.5, map_samples),
                                       axis({0, 1, 0}, -0.5, 0.5, map_samples));
        }

        // Transverse reference plane through the DFP (normal to boresight), same extent.
        SamplingGrid transverse_window()
        {
            return SamplingGrid::plane({0.0, 1.0, 0.0}, axis({1, 0, 0}, -0.5, 0.5, map_samples),
                                       axis({0, 0, 1}, -0.5, 0.5, map_samples));
        }

        UniformPlanarArray square(std::size_t side, double spacing_ratio)
        {
            return UniformPlanarArray(side, side, spacing_ratio * lambda, lambda);
        }

        bool within_rel(double v, double target, double tol) { return std::abs(v - target) <= tol * target; }

        struct SpacingSweepRun
        {
            std::vector<SpacingRow> rows;
            double seconds = 0.0;
        };

        SpacingSweepRun run_spacing_sweep()
        {
            const auto t0 = Clock::now();
            SpacingSweepRun out;
            out.rows = spacing_tradeoff({60, 60, lambda}, sweep_dfp, {0.5, 1.0, 1.5});
            out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
            return out;
        }

        CriterionResult spacing_hpbw(const SpacingSweepRun &f)
        {
            const double h05 = f.rows[0].hpbw_m, h1 = f.rows[1].hpbw_m;
            CriterionResult r;
            r.id = "spacing-hpbw";
            r.claim = "60x60 @28 GHz, DFP (0,1,-0.5): HPBW 8.5 cm at 0.5 lambda, 4.9 cm at 1 lambda, < 60 s";
            r.expected = "8.5 cm / 4.9 cm";
            r.observed = cm(h05) + " / " + cm(h1) + " (1.5 lambda: " + cm(f.rows[2].hpbw_m) + "), " +
                         fmt(f.seconds) + " s";
            r.tolerance = "+-15 % each, runtime < 60 s";
            r.pass = within_rel(h05, hpbw_half_wavelength_m, hpbw_rel_tol) &&
                     within_rel(h1, hpbw_one_wavelength_m, hpbw_rel_tol) && f.seconds < sweep_runtime_limit_s;
            return r;
        }

        CriterionResult spacing_peak(const SpacingSweepRun &f)
        {
            std::size_t best = 0;
            for (std::size_t k = 1; k < f.rows.size(); ++k)
                if (f.rows[k].peak_power > f.rows[best].peak_power)
                    best = k;
            const double drop = 1.0 - f.rows[1].relative_peak;
            CriterionResult r;
            r.id = "spacing-peak";
            r.claim = "peak power is largest at 0.5 lambda; drop 0.5 -> 1 lambda about 4 %";
            r.expected = "argmax 0.5, drop 4 %";
            r.observed = "argmax " + fmt(f.rows[best].spacing_ratio) + ", drop " + fmt(drop * 100.0) + " %";
            r.tolerance = "drop +-3 percentage points";
            r.pass = f.rows[best].spacing_ratio == 0.5 && std::abs(drop - peak_drop_expected) <= peak_drop_tol;
            return r;
        }

        CriterionResult size_trend(const SpacingSweepRun &f)
        {
            const auto rows = size_tradeoff(0.5, lambda, sweep_dfp, {10, 20, 30, 40, 50, 60});
            bool decreasing = true, complete = true;
            std::string seq;
            for (std::size_t k = 0; k < rows.size(); ++k)
            {
                complete = complete && rows[k].hpbw_m.has_value();
                if (!rows[k].hpbw_m)
                {
                    seq += (k ? ", " : "") + std::string("n/a");
                    continue;
                }
                seq += (k ? ", " : "") + fmt(*rows[k].hpbw_m * 100.0);
                if (k > 0 && rows[k - 1].hpbw_m && !(*rows[k].hpbw_m < *rows[k - 1].hpbw_m))
                    decreasing = false;
            }
            const double last = rows.back().hpbw_m.value_or(0.0);
            CriterionResult r;
            r.id = "size-hpbw-trend";
            r.claim = "HPBW strictly decreasing over sqrt(N) = 10..60 at 0.5 lambda; sqrt(N)=60 matches the spacing sweep";
            r.expected = "strictly decreasing; last = 8.5 cm";
            r.observed = "[" + seq + "] cm";
            r.tolerance = "last within +-15 % of 8.5 cm and within 1e-9 of the spacing-sweep value";
            r.pass = complete && decreasing && within_rel(last, hpbw_half_wavelength_m, hpbw_rel_tol) &&
                     std::abs(last - f.rows[0].hpbw_m) <= 1e-9 * last;
            return r;
        }

        struct BfrStudy
        {
            FieldMap xy_large;
            CriterionResult result;
        };

        BfrStudy bfr_contrast()
        {
            double bfr_ref[2], bfr_xy[2], peak[2];
            std::optional<FieldMap> xy_large;
            const std::size_t sides[2] = {6, 60};
            for (int k = 0; k < 2; ++k)
            {
                const auto array = square(sides[k], 0.5);
                const auto w = mrt_weights(steering_vector(array, boresight_dfp));
                auto xy = evaluate_field(array, w, standard_window());
                const auto ref = evaluate_field(array, w, transverse_window());
                bfr_ref[k] = bfr(ref, boresight_dfp, bfr_eta).radius_m;
                bfr_xy[k] = bfr(xy, boresight_dfp, bfr_eta).radius_m;
                peak[k] = xy.max_power();
                if (k == 1)
                    xy_large = std::move(xy);
            }
            CriterionResult r;
            r.id = "bfr-contrast";
            r.claim = "eta=0.9: BFR(60x60) < 0.5 BFR(6x6) and peak(60x60) > peak(6x6), same windows, raw power";
            r.expected = "BFR ratio < 0.5, peak ratio > 1";
            r.observed = "BFR transverse plane " + cm(bfr_ref[1]) + " vs " + cm(bfr_ref[0]) + " (ratio " +
                         fmt(bfr_ref[1] / bfr_ref[0]) + "); xy plane " + cm(bfr_xy[1]) + " vs " + cm(bfr_xy[0]) +
                         " (ratio " + fmt(bfr_xy[1] / bfr_xy[0]) + "); peak ratio " + fmt(peak[1] / peak[0]);
            r.tolerance = "BFR on the reference plane through the DFP normal to boresight";
            r.pass = bfr_ref[1] < bfr_ratio_limit * bfr_ref[0] && peak[1] > peak[0];
            return {std::move(*xy_large), r};
        }

        CriterionResult orthogonality_trend()
        {
            const auto prof = orthogonality_profile({0, 1, 0}, {0.3, 1, 0}, {{6, 6}, {60, 60}}, 0.5 * lambda, lambda);
            CriterionResult r;
            r.id = "orthogonality-trend";
            r.claim = "near-field correlation of r1=(0,1,0), r2=(0.3,1,0) falls with N";
            r.expected = "corr(60x60) < corr(6x6) and corr(60x60) < 0.1";
            r.observed = "corr(6x6) " + fmt(prof[0].second) + ", corr(60x60) " + fmt(prof[1].second);
            r.tolerance = "strict";
            r.pass = prof[1].second < prof[0].second && prof[1].second < correlation_limit;
            return r;
        }

        CriterionResult security_suite()
        {
            const std::vector<Point3> dfps{{-0.3, 1.0, 0.0}, {0.3, 1.0, 0.0}};
            const auto grid = SamplingGrid::plane({0.0, 0.0, 0.0}, axis({1, 0, 0}, -1.0, 1.0, map_samples),
                                                  axis({0, 1, 0}, 0.2, 2.2, map_samples));
            // both DFPs as a two-sample line, evaluated through the field kernel instead of the calibration path
            const auto probe_line = SamplingGrid::line(dfps[0], axis({1, 0, 0}, 0.0, 0.6, 2));

            bool residual_ok = true, sinr_ok = true, enclosed_ok = true, increasing = true;
            double prev_fraction = -1.0;
            std::string obs;
            for (std::size_t side : {5u, 15u, 60u})
            {
                SecurityScenario sc{square(side, 0.5), dfps, grid};
                const auto cal = calibrate_power(sc);
                const auto map = security_map(sc, cal);
                const auto boundary = secure_boundary(map);
                residual_ok = residual_ok && cal.max_residual_db < calibration_tol_db;

                const auto at = evaluate_field(sc.array, cal.weights, probe_line, sc.gain);
                double worst = 0.0;
                for (std::size_t m = 0; m < 2; ++m)
                {
                    std::vector<double> received(2);
                    for (std::size_t s = 0; s < 2; ++s)
                        received[s] = cal.stream_powers[s] * at.per_stream_power[s][m];
                    worst = std::max(worst, std::abs(to_db(stream_sinr(received, m, sc.noise_power)) - 10.0));
                }
                sinr_ok = sinr_ok && worst < calibration_tol_db;

                std::size_t enclosed = 0;
                for (const auto &d : dfps)
                    for (const auto &poly : boundary)
                        if (point_in_polygon(poly, grid_coordinates(grid, d)))
                        {
                            ++enclosed;
                            break;
                        }
                enclosed_ok = enclosed_ok && enclosed == dfps.size();
                increasing = increasing && map.secure_area_fraction > prev_fraction;
                prev_fraction = map.secure_area_fraction;
                obs += std::to_string(side) + "x" + std::to_string(side) + ": secure " +
                       fmt(map.secure_area_fraction) + ", residual " + fmt(cal.max_residual_db) +
                       " dB, SINR err " + fmt(worst) + " dB, enclosed " + std::to_string(enclosed) + "/2; ";
            }
            CriterionResult r;
            r.id = "security-suite";
            r.claim = "SINR calibration to 10 dB at both DFPs; secure area grows 5x5 -> 15x15 -> 60x60; DFPs enclosed";
            r.expected = "residual < 0.01 dB, SINR 10 dB, fraction strictly increasing, 2/2 enclosed";
            r.observed = obs;
            r.tolerance = "0.01 dB";
            r.pass = residual_ok && sinr_ok && enclosed_ok && increasing;
            return r;
        }

        CriterionResult adaptive_oracle()
        {
            const auto array = square(2, 0.5);
            const Point3 dfp{0.1, 0.6, -0.05};
            const unsigned bits = 2;
            const double best = reference::exhaustive_max_power(array, dfp, bits);
            std::size_t matches = 0;
            for (std::uint64_t seed = 1; seed <= seed_count; ++seed)
            {
                SimulatedFeedback fb(array, dfp, partition(array, 2, 2), bits);
                AdaptiveConfig cfg;
                cfg.seed = seed;
                const auto run = run_sbf(fb, cfg);
                matches += std::abs(run.final_power() - best) <= 1e-12 * best ? 1 : 0;
            }
            CriterionResult r;
            r.id = "adaptive-oracle";
            r.claim = "2x2 array, 2-bit phases: run_sbf reaches the exhaustive maximum over 256 settings";
            r.expected = "10/10 seeds equal";
            r.observed = std::to_string(matches) + "/10 seeds equal (max " + fmt(best) + ")";
            r.tolerance = "1e-12 relative";
            r.pass = matches == seed_count;
            return r;
        }

        struct AdaptiveStudy
        {
            CriterionResult quality, transfer;
        };

        AdaptiveStudy adaptive_study()
        {
            const auto array = square(16, 0.5);
            const auto layout = partition(array, 4, 4);
            const Point3 dfp{0.0, 1.0, 0.0};
            const Point3 nearby = dfp + Point3{0.05, 0.0, 0.0};
            const unsigned bits = 4;

            std::vector<double> ratios, warm_epochs, cold_epochs;
            bool monotone = true;
            double bound = 0.0;
            for (std::uint64_t seed = 1; seed <= seed_count; ++seed)
            {
                AdaptiveConfig cfg;
                cfg.seed = seed;
                SimulatedFeedback fb(array, dfp, layout, bits);
                bound = fb.quantized_mrt_bound();
                const auto cold = run_sbf(fb, cfg);
                for (std::size_t k = 1; k < cold.log.size(); ++k)
                    monotone = monotone && cold.log[k].combined_power >= cold.log[k - 1].combined_power;
                ratios.push_back(cold.final_power() / bound);

                SimulatedFeedback teacher_fb(array, nearby, layout, bits);
                const auto teacher = run_sbf(teacher_fb, cfg);
                SimulatedFeedback student_fb(array, dfp, layout, bits);
                const auto warm = run_sbf(student_fb, cfg, &teacher);
                warm_epochs.push_back(static_cast<double>(epochs_to_fraction(warm, transfer_fraction)));
                cold_epochs.push_back(static_cast<double>(epochs_to_fraction(cold, transfer_fraction)));
            }
            AdaptiveStudy out;
            auto &q = out.quality;
            q.id = "adaptive-quality";
            q.claim = "16x16, 4x4 tiles, 4-bit, cold start: median final power >= 0.9 quantized-MRT bound";
            q.expected = "median ratio >= 0.9, epoch logs nondecreasing";
            q.observed = "median ratio " + fmt(median(ratios)) + " (min " +
                         fmt(*std::min_element(ratios.begin(), ratios.end())) + "), logs " +
                         (monotone ? "nondecreasing" : "DECREASING");
            q.tolerance = "10 seeds";
            q.pass = median(ratios) >= adaptive_quality_ratio && monotone;

            auto &t = out.transfer;
            t.id = "transfer-speedup";
            t.claim = "warm start from a DFP displaced 5 cm reaches 95 % of final power in fewer epochs";
            t.expected = "median warm < median cold";
            t.observed = "median epochs warm " + fmt(median(warm_epochs)) + ", cold " + fmt(median(cold_epochs));
            t.tolerance = "10 paired seeds, strict";
            t.pass = median(warm_epochs) < median(cold_epochs);
            return out;
        }

        CriterionResult mrt_optimality()
        {
            std::mt19937_64 rng(2024);
            std::normal_distribution<double> g(0.0, 1.0);
            std::size_t violations = 0;
            double worst_ratio = 0.0;
            for (std::size_t side : {2u, 4u, 8u, 16u})
            {
                const auto array = square(side, 0.5);
                const auto a = steering_vector(array, {0.05, 0.8, -0.1});
                const double best = std::norm(array_response(a.entries, mrt_weights(a).weights));
                std::vector<cplx> w(a.size());
                for (std::size_t draw = 0; draw < mrt_draws; ++draw)
                {
                    double sq = 0.0;
                    for (auto &x : w)
                    {
                        x = {g(rng), g(rng)};
                        sq += std::norm(x);
                    }
                    for (auto &x : w)
                        x /= std::sqrt(sq);
                    const double p = std::norm(array_response(a.entries, w));
                    worst_ratio = std::max(worst_ratio, p / best);
                    violations += p > best * (1.0 + 1e-12) ? 1 : 0;
                }
            }
            CriterionResult r;
            r.id = "prop-mrt-optimality";
            r.claim = "MRT beats 10^4 random unit-norm weights on 2x2 .. 16x16 arrays";
            r.expected = "0 violations";
            r.observed = std::to_string(violations) + " violations, best random / MRT = " + fmt(worst_ratio);
            r.tolerance = "1e-12 relative";
            r.pass = violations == 0;
            return r;
        }

        CriterionResult global_phase_invariance()
        {
            const auto array = square(16, 0.5);
            auto w = multi_focal_weights(array, {{-0.1, 0.8, 0.0}, {0.1, 0.9, 0.05}});
            const auto grid = SamplingGrid::plane({0, 1, 0}, axis({1, 0, 0}, -0.3, 0.3, 41),
                                                  axis({0, 1, 0}, -0.3, 0.3, 41));
            const auto base = evaluate_field(array, w, grid);
            const cplx rot = std::polar(1.0, 0.7);
            for (auto &chain : w.per_chain)
                for (auto &x : chain)
                    x *= rot;
            for (auto &x : w.weights)
                x *= rot;
            const auto turned = evaluate_field(array, w, grid);
            double worst = 0.0;
            for (std::size_t k = 0; k < base.power.size(); ++k)
                worst = std::max(worst, std::abs(turned.power[k] - base.power[k]) / base.power[k]);
            CriterionResult r;
            r.id = "prop-global-phase";
            r.claim = "a global unit-modulus factor on the weights leaves every field value unchanged";
            r.expected = "max relative change <= 1e-9";
            r.observed = fmt(worst);
            r.tolerance = "1e-9";
            r.pass = worst <= invariance_tol;
            return r;
        }

        CriterionResult mirror_symmetry(const FieldMap &map)
        {
            const std::size_t n1 = map.grid.axes()[0].samples, n2 = map.grid.axes()[1].samples;
            double worst = 0.0;
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j)
                {
                    const double a = map.at(i, j), b = map.at(n1 - 1 - i, j);
                    worst = std::max(worst, std::abs(a - b) / std::max(a, b));
                }
            CriterionResult r;
            r.id = "prop-mirror-symmetry";
            r.claim = "60x60 boresight DFP: power(x, y) = power(-x, y) on the symmetric xy window";
            r.expected = "max relative difference <= 1e-9";
            r.observed = fmt(worst);
            r.tolerance = "1e-9";
            r.pass = worst <= invariance_tol;
            return r;
        }

        CriterionResult grating_lobes(const FieldMap &dense_map)
        {
            const auto sparse = square(60, 1.5);
            const auto w = mrt_weights(steering_vector(sparse, boresight_dfp));
            const auto wide = SamplingGrid::plane({0.0, 0.0, 0.0}, axis({1, 0, 0}, -1.5, 1.5, 301),
                                                  axis({0, 1, 0}, 0.2, 2.0, 181));
            const auto map = evaluate_field(sparse, w, wide);
            const auto dense_peaks = find_focal_peaks(dense_map, grating_threshold).size();
            const auto sparse_peaks = find_focal_peaks(map, grating_threshold).size();
            // strongest secondary local maximum, for the record
            const auto all = find_focal_peaks(map, 1e-3);
            const double secondary = all.size() > 1 ? all[1].power / all[0].power : 0.0;
            CriterionResult r;
            r.id = "prop-grating-lobes";
            r.claim = "60x60 MRT: >= 2 peaks above 0.5 max at 1.5 lambda (wide window), exactly 1 at 0.5 lambda";
            r.expected = ">= 2 and == 1";
            r.observed = std::to_string(sparse_peaks) + " at 1.5 lambda (strongest secondary " + fmt(secondary) +
                         " of max), " + std::to_string(dense_peaks) + " at 0.5 lambda";
            r.tolerance = "relative threshold 0.5";
            r.pass = sparse_peaks >= 2 && dense_peaks == 1;
            return r;
        }

        std::map<std::string, std::string> data_checksums(const std::filesystem::path &dir)
        {
            std::map<std::string, std::string> out;
            for (const auto &e : std::filesystem::directory_iterator(dir))
            {
                if (e.path().filename() == "manifest.json")
                    continue;
                std::ifstream f(e.path(), std::ios::binary);
                std::ostringstream ss;
                ss << f.rdbuf();
                out[e.path().filename().string()] = io::sha256_hex(ss.str());
            }
            return out;
        }

        CriterionResult determinism()
        {
            const std::string text = R"({
  "id": "determinism",
  "frequency_hz": 28e9,
  "arrays": [{"rows": 12, "cols": 12, "spacing_wavelengths": 0.5}],
  "dfps": [[0.0, 0.6, 0.0], [0.1, 0.7, 0.0]],
  "grid": {"origin": [0, 0.6, 0], "axes": [
    {"direction": [1, 0, 0], "start": -0.2, "stop": 0.2, "samples": 41},
    {"direction": [0, 1, 0], "start": -0.2, "stop": 0.2, "samples": 41}]}
})";
            const auto sc = parse_scenario(text, "determinism.json", Command::FieldMap);
            const auto base = std::filesystem::temp_directory_path() / "nearfocus-determinism";
            std::ostringstream sink;
            std::map<std::string, std::string> sums[2];
            for (int k = 0; k < 2; ++k)
            {
                const auto dir = base / std::to_string(k);
                std::filesystem::remove_all(dir);
                cli::RunOptions opt{dir, std::nullopt, io::sha256_hex(text)};
                cli::field_map(sc, opt, sink);
                sums[k] = data_checksums(dir);
            }
            std::filesystem::remove_all(base);

            SimulatedFeedback fb1(square(8, 0.5), {0, 1, 0}, SubArrayPartition(8, 8, 4, 4), 3);
            SimulatedFeedback fb2(square(8, 0.5), {0, 1, 0}, SubArrayPartition(8, 8, 4, 4), 3);
            AdaptiveConfig cfg;
            cfg.seed = 77;
            const auto r1 = run_sbf(fb1, cfg), r2 = run_sbf(fb2, cfg);
            bool logs_equal = r1.log.size() == r2.log.size() && r1.post_sync == r2.post_sync;
            for (std::size_t k = 0; logs_equal && k < r1.log.size(); ++k)
                logs_equal = r1.log[k].combined_power == r2.log[k].combined_power;

            CriterionResult r;
            r.id = "prop-determinism";
            r.claim = "re-running a scenario yields byte-identical datasets; seeded runs repeat bit-for-bit";
            r.expected = "identical checksums and logs";
            r.observed = std::to_string(sums[0].size()) + " files " +
                         (sums[0] == sums[1] && !sums[0].empty() ? "identical" : "DIFFER") + ", adaptive logs " +
                         (logs_equal ? "identical" : "DIFFER");
            r.tolerance = "exact";
            r.pass = sums[0] == sums[1] && !sums[0].empty() && logs_equal;
            return r;
        }
    }

    std::vector<CriterionResult> run_all(std::ostream *progress)
    {
        std::vector<CriterionResult> out;
        auto add = [&](CriterionResult r) {
            if (progress)
                *progress << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.observed << std::endl;
            out.push_back(std::move(r));
        };
        const auto sweep = run_spacing_sweep();
        add(spacing_hpbw(sweep));
        add(spacing_peak(sweep));
        add(size_trend(sweep));
        auto contrast = bfr_contrast();
        add(contrast.result);
        add(orthogonality_trend());
        add(security_suite());
        add(adaptive_oracle());
        auto study = adaptive_study();
        add(study.quality);
        add(study.transfer);
        add(mrt_optimality());
        add(global_phase_invariance());
        add(mirror_symmetry(contrast.xy_large));
        add(grating_lobes(contrast.xy_large));
        add(determinism());
        return out;
    }

    std::string format_report(const std::vector<CriterionResult> &results)
    {
        std::ostringstream os;
        os << "criterion | claim | expected | observed | tolerance | verdict\n";
        for (const auto &r : results)
            os << r.id << " | " << r.claim << " | " << r.expected << " | " << r.observed << " | " << r.tolerance
               << " | " << (r.pass ? "PASS" : "FAIL") << '\n';
        std::size_t passed = 0;
        for (const auto &r : results)
            passed += r.pass ? 1 : 0;
        os << passed << "/" << results.size() << " criteria passed\n";
        return os.str();
    }

    bool all_passed(const std::vector<CriterionResult> &results)
    {
        return std::all_of(results.begin(), results.end(), [](const auto &r) { return r.pass; });
    }
}
