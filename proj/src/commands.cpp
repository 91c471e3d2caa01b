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

#include "nearfocus/commands.hpp"
#include "nearfocus/acceptance.hpp"
#include "nearfocus/error.hpp"
#include "nearfocus/io.hpp"
#include "nearfocus/reference.hpp"
#include "nearfocus/security.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#ifndef NEARFOCUS_SCENARIO_DIR
#define NEARFOCUS_SCENARIO_DIR "scenarios"
#endif

namespace nearfocus::cli
{
    namespace
    {
        using Clock = std::chrono::steady_clock;
        using io::MetricRow;

        double seconds_since(Clock::time_point t0)
        {
            return std::chrono::duration<double>(Clock::now() - t0).count();
        }

        std::string size_tag(const ArraySpec &a) { return std::to_string(a.rows) + "x" + std::to_string(a.cols); }

        nlohmann::ordered_json describe(const UniformPlanarArray &a)
        {
            return {{"rows", a.rows()},
                    {"cols", a.cols()},
                    {"spacing_m", a.spacing()},
                    {"wavelength_m", a.wavelength()},
                    {"aperture_diameter_m", a.aperture_diameter()},
                    {"fraunhofer_m", fraunhofer_distance(a)}};
        }
    }

    int field_map(const Scenario &sc, const RunOptions &opt, std::ostream &log)
    {
        const auto t0 = Clock::now();
        io::RunRecorder rec(opt.out_dir, sc.raw, opt.input_hash);
        std::vector<MetricRow> metrics;
        auto arrays_json = nlohmann::ordered_json::array();
        rec.extra()["gain_model"] = to_string(sc.gain);
        rec.extra()["normalization"] = sc.normalization == Normalization::PeakOne ? "peak-one" : "raw";

        for (const auto &spec : sc.arrays)
        {
            const auto array = spec.build(sc.wavelength_m);
            const std::string tag = size_tag(spec);
            const auto weights = sc.dfps.size() == 1 ? mrt_weights(steering_vector(array, sc.dfps[0], sc.gain))
                                                     : multi_focal_weights(array, sc.dfps, sc.gain);
            const auto raw = evaluate_field(array, weights, *sc.grid, sc.gain);
            const auto shown = sc.normalization == Normalization::PeakOne ? normalize_peak(raw) : raw;
            const auto weights_text = io::weights_csv(weights);
            rec.write("field_" + tag + ".csv", io::field_map_csv(shown));
            rec.write("weights_" + tag + ".csv", weights_text);

            const auto spot = spot_metrics(raw, sc.dfps[0], sc.eta);
            const auto peaks = find_focal_peaks(raw, sc.peak_threshold);
            const std::string id = sc.id + "/" + tag;
            metrics.push_back({id, "peak_power", spot.peak_power, "raw"});
            metrics.push_back({id, "power_at_dfp", power_at(array, weights, sc.dfps[0], sc.gain), "raw"});
            metrics.push_back({id, "peak_x", spot.peak_location.x, "m"});
            metrics.push_back({id, "peak_y", spot.peak_location.y, "m"});
            metrics.push_back({id, "peak_z", spot.peak_location.z, "m"});
            if (spot.hpbw_m)
                metrics.push_back({id, "hpbw_axis2", *spot.hpbw_m, "m"});
            metrics.push_back({id, "bfr_map_plane", spot.bfr->radius_m, "m"});
            metrics.push_back({id, "bfr_map_plane_boundary_fraction", spot.bfr->boundary_fraction, "1"});
            metrics.push_back({id, "significant_peaks", static_cast<double>(peaks.size()), "count"});
            metrics.push_back({id, "fraunhofer_distance", fraunhofer_distance(array), "m"});
            if (sc.bfr_grid)
            {
                const auto ref = evaluate_field(array, weights, *sc.bfr_grid, sc.gain);
                const auto b = bfr(ref, sc.dfps[0], sc.eta);
                metrics.push_back({id, "bfr_reference_plane", b.radius_m, "m"});
                metrics.push_back({id, "bfr_reference_plane_boundary_fraction", b.boundary_fraction, "1"});
                if (b.window_warning)
                    log << "warning: " << id << " BFR reference plane truncated (boundary share "
                        << io::format_number(b.boundary_fraction) << ")\n";
            }
            if (spot.bfr->window_warning)
                log << "warning: " << id << " map window truncated (boundary share "
                    << io::format_number(spot.bfr->boundary_fraction) << ")\n";

            auto desc = describe(array);
            desc["weights_sha256"] = io::sha256_hex(weights_text);
            arrays_json.push_back(desc);
            log << id << ": peak " << io::format_number(spot.peak_power) << ", BFR(eta=" << sc.eta << ") "
                << io::format_number(spot.bfr->radius_m) << " m, " << peaks.size() << " peak(s)\n";
        }
        rec.extra()["arrays"] = std::move(arrays_json);
        rec.write("metrics.csv", io::metrics_csv(metrics));
        rec.finish(seconds_since(t0));
        return Success;
    }

    int tradeoffs(const Scenario &sc, const RunOptions &opt, std::ostream &log)
    {
        const auto t0 = Clock::now();
        io::RunRecorder rec(opt.out_dir, sc.raw, opt.input_hash);
        rec.extra()["gain_model"] = to_string(sc.gain);
        std::vector<MetricRow> metrics;
        const Point3 dfp = sc.dfps[0];

        if (sc.spacing_sweep)
        {
            const auto &s = *sc.spacing_sweep;
            ArrayTemplate tpl{s.rows, s.cols, sc.wavelength_m, {}, ArrayPlane::XZ};
            if (!sc.arrays.empty())
            {
                tpl.center = sc.arrays[0].center;
                tpl.plane = sc.arrays[0].plane;
            }
            const auto rows = spacing_tradeoff(tpl, dfp, s.spacing_ratios, s.profile, sc.gain);
            double global_max = 0.0;
            for (const auto &r : rows)
                global_max = std::max(global_max, r.profile.max_power());
            std::string profiles = "spacing_ratio,axis_m,power,power_normalized\n";
            std::string summary = "spacing_ratio,peak_power,relative_peak,hpbw_m\n";
            for (const auto &r : rows)
            {
                const auto samples = profile_from_line(r.profile);
                for (const auto &p : samples)
                    profiles += io::format_number(r.spacing_ratio) + ',' + io::format_number(p.position) + ',' +
                                io::format_number(p.power) + ',' + io::format_number(p.power / global_max) + '\n';
                summary += io::format_number(r.spacing_ratio) + ',' + io::format_number(r.peak_power) + ',' +
                           io::format_number(r.relative_peak) + ',' + io::format_number(r.hpbw_m) + '\n';
                const std::string id = sc.id + "/spacing_" + io::format_number(r.spacing_ratio);
                metrics.push_back({id, "peak_power", r.peak_power, "raw"});
                metrics.push_back({id, "relative_peak", r.relative_peak, "1"});
                metrics.push_back({id, "hpbw", r.hpbw_m, "m"});
                log << id << ": relative peak " << io::format_number(r.relative_peak) << ", HPBW "
                    << io::format_number(r.hpbw_m * 100.0) << " cm\n";
            }
            rec.write("spacing_profiles.csv", profiles);
            rec.write("spacing_summary.csv", summary);
        }
        if (sc.size_sweep)
        {
            const auto &s = *sc.size_sweep;
            const auto rows = size_tradeoff(s.spacing_ratio, sc.wavelength_m, dfp, s.sides, s.profile, sc.gain);
            std::string table = "side,elements,hpbw_m,note\n";
            for (const auto &r : rows)
            {
                table += std::to_string(r.side) + ',' + std::to_string(r.side * r.side) + ',' +
                         (r.hpbw_m ? io::format_number(*r.hpbw_m) : std::string("nan")) + ',' + r.note + '\n';
                if (r.hpbw_m)
                    metrics.push_back({sc.id + "/side_" + std::to_string(r.side), "hpbw", *r.hpbw_m, "m"});
                log << sc.id << "/side_" << r.side << ": "
                    << (r.hpbw_m ? io::format_number(*r.hpbw_m * 100.0) + " cm" : "no HPBW (" + r.note + ")")
                    << '\n';
            }
            rec.write("size_sweep.csv", table);
        }
        rec.write("metrics.csv", io::metrics_csv(metrics));
        rec.finish(seconds_since(t0));
        return Success;
    }

    int security(const Scenario &sc, const RunOptions &opt, std::ostream &log)
    {
        const auto t0 = Clock::now();
        io::RunRecorder rec(opt.out_dir, sc.raw, opt.input_hash);
        rec.extra()["gain_model"] = to_string(sc.gain);
        rec.extra()["stream_power_split"] = "calibrated per stream";
        std::vector<MetricRow> metrics;

        for (const auto &spec : sc.arrays)
        {
            const std::string tag = size_tag(spec);
            const std::string id = sc.id + "/" + tag;
            SecurityScenario s{spec.build(sc.wavelength_m), sc.dfps, *sc.grid, sc.noise_power,
                               sc.target_snr_db, sc.threshold_db, sc.gain};
            const auto cal = calibrate_power(s);
            const auto map = security_map(s, cal);
            const auto boundary = secure_boundary(map);
            rec.write("sinr_" + tag + ".csv", io::security_map_csv(map));
            rec.write("boundary_" + tag + ".csv", io::polylines_csv(boundary));

            std::size_t enclosed = 0;
            for (const auto &d : sc.dfps)
            {
                const auto q = grid_coordinates(s.grid, d);
                for (const auto &poly : boundary)
                    if (point_in_polygon(poly, q))
                    {
                        ++enclosed;
                        break;
                    }
            }
            for (std::size_t m = 0; m < cal.stream_powers.size(); ++m)
            {
                metrics.push_back({id, "stream_power_" + std::to_string(m), cal.stream_powers[m], "W"});
                metrics.push_back({id, "sinr_at_dfp_" + std::to_string(m), cal.sinr_at_dfp_db[m], "dB"});
            }
            metrics.push_back({id, "calibration_residual", cal.max_residual_db, "dB"});
            metrics.push_back({id, "calibration_iterations", static_cast<double>(cal.iterations), "count"});
            metrics.push_back({id, "secure_area_fraction", map.secure_area_fraction, "1"});
            metrics.push_back({id, "insecure_area", enclosed_area(boundary), "m2"});
            metrics.push_back({id, "dfps_enclosed", static_cast<double>(enclosed), "count"});
            log << id << ": secure fraction " << io::format_number(map.secure_area_fraction) << ", residual "
                << io::format_number(cal.max_residual_db) << " dB, " << boundary.size() << " contour(s)\n";
        }
        rec.write("metrics.csv", io::metrics_csv(metrics));
        rec.finish(seconds_since(t0));
        return Success;
    }

    int adaptive(const Scenario &sc, const RunOptions &opt, std::ostream &log)
    {
        const auto t0 = Clock::now();
        io::RunRecorder rec(opt.out_dir, sc.raw, opt.input_hash);
        const auto &spec = *sc.adaptive;
        const auto array = sc.arrays[0].build(sc.wavelength_m);
        const auto layout = partition(array, spec.tile_rows, spec.tile_cols);
        const Point3 dfp = sc.dfps[0];
        std::vector<MetricRow> metrics;
        int status = Success;

        const auto seeds = opt.seed ? std::vector<std::uint64_t>{*opt.seed} : spec.seeds;
        rec.extra()["seeds"] = seeds;
        rec.extra()["tiling"] = {spec.tile_rows, spec.tile_cols};
        rec.extra()["phase_bits"] = spec.phase_bits;
        rec.extra()["tile_budget"] = spec.tile_budget;
        rec.extra()["init"] = spec.warm_start_offset ? "warm-start" : to_string(spec.init);

        std::optional<double> oracle;
        if (spec.oracle)
            oracle = reference::exhaustive_max_power(array, dfp, spec.phase_bits, sc.gain);

        for (auto seed : seeds)
        {
            AdaptiveConfig cfg;
            cfg.tile_budget = spec.tile_budget;
            cfg.max_epochs = spec.max_epochs;
            cfg.init = spec.init;
            cfg.csi_noise_rad = spec.csi_noise_rad;
            cfg.seed = seed;

            SimulatedFeedback feedback(array, dfp, layout, spec.phase_bits, sc.gain);
            const double bound = feedback.quantized_mrt_bound();
            const std::string id = sc.id + "/seed_" + std::to_string(seed);

            std::optional<AdaptiveRun> teacher;
            if (spec.warm_start_offset)
            {
                SimulatedFeedback nearby(array, dfp + *spec.warm_start_offset, layout, spec.phase_bits, sc.gain);
                teacher = run_sbf(nearby, cfg);
            }
            const auto run = run_sbf(feedback, cfg, teacher ? &*teacher : nullptr);
            rec.write("epochs_seed" + std::to_string(seed) + ".csv", io::epoch_log_csv(run, bound));

            metrics.push_back({id, "final_power", run.final_power(), "raw"});
            metrics.push_back({id, "quantized_mrt_bound", bound, "raw"});
            metrics.push_back({id, "bound_ratio", run.final_power() / bound, "1"});
            metrics.push_back({id, "epochs", static_cast<double>(run.log.back().epoch), "count"});
            metrics.push_back({id, "epochs_to_95pct", static_cast<double>(epochs_to_fraction(run, 0.95)), "count"});
            metrics.push_back({id, "queries", static_cast<double>(feedback.queries()), "count"});
            if (oracle)
            {
                metrics.push_back({id, "exhaustive_max", *oracle, "raw"});
                const bool match = std::abs(run.final_power() - *oracle) <= 1e-12 * *oracle;
                if (!match)
                {
                    log << id << ": final power " << io::format_number(run.final_power())
                        << " differs from exhaustive maximum " << io::format_number(*oracle) << '\n';
                    status = AcceptanceFailure;
                }
            }
            log << id << ": final " << io::format_number(run.final_power()) << " = "
                << io::format_number(run.final_power() / bound) << " x quantized MRT after "
                << run.log.back().epoch << " epoch(s)\n";
        }
        rec.write("metrics.csv", io::metrics_csv(metrics));
        rec.finish(seconds_since(t0));
        return status;
    }

    int verify(std::ostream &out)
    {
        const auto results = acceptance::run_all(&out);
        out << acceptance::format_report(results);
        return acceptance::all_passed(results) ? Success : AcceptanceFailure;
    }

    std::filesystem::path resolve_scenario(const std::string &name_or_path)
    {
        const std::filesystem::path p(name_or_path);
        if (std::filesystem::exists(p))
            return p;
        if (const char *dir = std::getenv("NEARFOCUS_SCENARIO_DIR"))
        {
            const auto candidate = std::filesystem::path(dir) / (name_or_path + ".json");
            if (std::filesystem::exists(candidate))
                return candidate;
        }
        const auto builtin = std::filesystem::path(NEARFOCUS_SCENARIO_DIR) / (name_or_path + ".json");
        if (std::filesystem::exists(builtin))
            return builtin;
        return p;
    }

    void set_threads(std::optional<int> threads)
    {
#ifdef _OPENMP
        if (!threads)
            if (const char *env = std::getenv("NEARFOCUS_THREADS"))
                threads = std::atoi(env);
        if (threads && *threads > 0)
            omp_set_num_threads(*threads);
#else
        (void)threads;
#endif
    }

    int run(Command command, const std::string &name_or_path, const RunOptions &opt, std::ostream &out,
            std::ostream &err)
    {
        try
        {
            const auto path = resolve_scenario(name_or_path);
            std::ifstream f(path, std::ios::binary);
            if (!f)
            {
                err << name_or_path << ":1: cannot open scenario file\n";
                return ValidationError;
            }
            std::ostringstream text;
            text << f.rdbuf();
            const auto sc = parse_scenario(text.str(), path.filename().string(), command);
            RunOptions o = opt;
            o.input_hash = io::sha256_hex(text.str());
            switch (command)
            {
            case Command::FieldMap: return field_map(sc, o, out);
            case Command::Tradeoffs: return tradeoffs(sc, o, out);
            case Command::Security: return security(sc, o, out);
            case Command::Adaptive: return adaptive(sc, o, out);
            }
            return ValidationError;
        }
        catch (const Error &e)
        {
            err << e.what() << '\n';
            switch (e.code())
            {
            case ErrorCode::Validation:
            case ErrorCode::InvalidArgument:
            case ErrorCode::DuplicateFocalPoint:
            case ErrorCode::IndivisibleTiling:
            case ErrorCode::ShapeMismatch:
            case ErrorCode::LengthMismatch:
            case ErrorCode::PointOnAperture:
            case ErrorCode::GridTooSmall:
                return ValidationError;
            default:
                return NumericalError;
            }
        }
        catch (const std::exception &e)
        {
            err << "internal error: " << e.what() << '\n';
            return NumericalError;
        }
    }
}
