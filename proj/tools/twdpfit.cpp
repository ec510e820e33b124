// SPDX-License-Identifier: Apache-2.0
//
// twdpfit: fading-model identification for directional channel measurements
// Copyright (C) 2026 The twdpfit authors
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

// twdpfit: command-line front end.
//
//   twdpfit fit      envelope files   -> fit reports and CDF overlay tables
//   twdpfit scan     directional scan -> power map and per-direction fit reports
//   twdpfit spatial  spatial grid     -> spatial correlation maps, optional tap fit
//   twdpfit ber                       -> 4-QAM bit error ratio curve
//   twdpfit synth    envelopes | grid | scan -> synthetic input files
//
// Exit codes: 0 success, 2 usage or input parse error, 3 domain or estimation error,
// 4 internal numerical error. TWDPFIT_LOG=0 silences the summary on stdout, 2 adds timings.

#include "twdp/errors.hpp"
#include "twdp/inference.hpp"
#include "twdp/io.hpp"
#include "twdp/linksim.hpp"
#include "twdp/measurement.hpp"
#include "twdp/rng.hpp"
#include "twdp/synth.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace twdp;

namespace
{
    enum Exit
    {
        exit_ok = 0,
        exit_usage = 2,
        exit_domain = 3,
        exit_numerical = 4
    };

    int log_level()
    {
        const char *v = std::getenv("TWDPFIT_LOG");
        return v ? std::atoi(v) : 1;
    }

    std::string k_text(double k)
    {
        char buf[96];
        if (k > 0.0)
            std::snprintf(buf, sizeof buf, "%.2f (%.2f dB)", k, 10.0 * std::log10(k));
        else
            std::snprintf(buf, sizeof buf, "%.2f (-inf dB)", k);
        return buf;
    }

    class Timer
    {
    public:
        explicit Timer(std::string what) : what_(std::move(what)), t0_(std::chrono::steady_clock::now()) {}
        ~Timer()
        {
            if (log_level() >= 2)
                std::fprintf(stderr, "[twdpfit] %s: %.2f s\n", what_.c_str(),
                             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count());
        }

    private:
        std::string what_;
        std::chrono::steady_clock::time_point t0_;
    };

    // Options shared by every command that runs the estimator
    struct FitOptions
    {
        io::FitSettings settings;
        bool serial = false;

        void add_to(CLI::App *cmd)
        {
            auto &g = settings.analysis.grid;
            cmd->add_option("--stride", settings.stride, "Every stride-th sample is used for fitting")->check(CLI::Range(2, 1000000));
            cmd->add_option("--k-min", g.k_min, "Smallest K on the grid (linear)")->check(CLI::NonNegativeNumber);
            cmd->add_option("--k-max", g.k_max, "Largest K on the grid (linear)")->check(CLI::PositiveNumber);
            cmd->add_option("--k-step", g.k_step, "K grid step")->check(CLI::PositiveNumber);
            cmd->add_option("--delta-step", g.delta_step, "Delta grid step")->check(CLI::Range(1e-6, 1.0));
            cmd->add_option("--alpha", settings.analysis.alpha, "Significance level of the g-test")->check(CLI::Range(1e-12, 0.5));
            cmd->add_option("--per-cell", settings.analysis.per_cell, "Observations per g-test cell")->check(CLI::Range(1, 1000000));
            cmd->add_option("--phase-nodes", settings.analysis.phase_nodes, "Phase nodes of the TWDP CDF quadrature")->check(CLI::Range(2, 1 << 20));
            cmd->add_flag("--serial", serial, "Single-threaded evaluation");
        }

        AnalysisConfig config() const
        {
            AnalysisConfig c = settings.analysis;
            c.exec = serial ? Execution::serial : Execution::parallel;
            return c;
        }
    };

    void print_report(const std::string &label, const FitReport &r)
    {
        if (log_level() < 1)
            return;
        std::cout << label << ": chosen " << (r.chosen == Model::twdp ? "TWDP" : "Rice") << "\n"
                  << "  omega_hat " << r.omega_hat << "  n_fit " << r.n_fit << "  n_moment " << r.n_moment << "\n"
                  << "  Rice  K " << k_text(r.rice.k) << "  AICc " << r.rice.aicc << (r.rice.k_at_boundary ? "  [K at grid boundary]" : "") << "\n"
                  << "  TWDP  K " << k_text(r.twdp.k) << "  delta " << r.twdp.delta << "  AICc " << r.twdp.aicc
                  << (r.twdp.k_at_boundary ? "  [K at grid boundary]" : "") << "\n"
                  << "  g-test G " << r.gtest.g << "  dof " << r.gtest.dof << "  threshold " << r.gtest.threshold << "  "
                  << (r.gtest.rejected ? "rejected" : "accepted") << "\n";
    }

    // ---------------------------------------------------------------------------------------

    struct FitCommand
    {
        std::vector<std::string> inputs;
        std::string out_dir = ".";
        std::size_t cdf_points = 200;
        FitOptions fit;

        int run()
        {
            const AnalysisConfig config = fit.config();
            std::vector<EnvelopeSet> sets;
            std::vector<std::vector<double>> fit_values;
            for (const auto &in : inputs)
            {
                std::vector<double> v = io::read_envelopes(in);
                try
                {
                    sets.push_back(partition_stride(v, fit.settings.stride));
                }
                catch (const std::domain_error &e)
                {
                    throw std::domain_error(in + ": " + e.what());
                }
                fit_values.push_back(sets.back().fit_values());
            }

            std::vector<FitReport> reports;
            {
                Timer t("fit of " + std::to_string(sets.size()) + " file(s)");
                reports = analyze_batch(sets, config);
            }

            // All results exist before the first file is written
            std::vector<std::pair<fs::path, std::string>> outputs;
            for (std::size_t i = 0; i < inputs.size(); ++i)
            {
                const std::string stem = fs::path(inputs[i]).stem().string();
                outputs.emplace_back(fs::path(out_dir) / (stem + ".report.json"),
                                     io::report_to_json(reports[i], fit.settings, inputs[i]).dump(2) + "\n");
                outputs.emplace_back(fs::path(out_dir) / (stem + ".cdf.csv"),
                                     io::format_cdf_overlay(fit_values[i], reports[i], cdf_points));
            }
            fs::create_directories(out_dir);
            for (const auto &[path, text] : outputs)
                io::write_atomic(path, text);
            for (std::size_t i = 0; i < inputs.size(); ++i)
                print_report(inputs[i], reports[i]);
            return exit_ok;
        }
    };

    struct ScanCommand
    {
        std::string input;
        std::string out_dir = ".";
        double margin_db = 10.0;
        FitOptions fit;

        int run()
        {
            const DirectionalScan scan = io::read_scan(input);
            const PowerMap pm = power_map(scan, margin_db);

            std::vector<EnvelopeSet> sets;
            std::vector<std::size_t> which;
            for (std::size_t i = 0; i < scan.records.size(); ++i)
            {
                if (!pm.evaluated[i])
                    continue;
                std::vector<double> env;
                env.reserve(scan.records[i].samples.size());
                for (const auto &s : scan.records[i].samples)
                    env.push_back(std::abs(s));
                try
                {
                    sets.push_back(partition_stride(env, fit.settings.stride));
                }
                catch (const std::domain_error &e)
                {
                    throw std::domain_error("direction " + std::to_string(i) + ": " + e.what());
                }
                which.push_back(i);
            }

            std::vector<FitReport> reports;
            {
                Timer t("fit of " + std::to_string(sets.size()) + " direction(s)");
                reports = analyze_batch(sets, fit.config());
            }

            nlohmann::ordered_json doc;
            doc["schema_version"] = io::schema_version;
            doc["input"] = input;
            doc["margin_db"] = margin_db;
            doc["directions"] = nlohmann::ordered_json::array();
            std::string csv = "azimuth_deg,elevation_deg,normalized_power,evaluated,marker\n";
            std::size_t next = 0;
            for (std::size_t i = 0; i < scan.records.size(); ++i)
            {
                const auto &rec = scan.records[i];
                nlohmann::ordered_json d;
                d["azimuth_deg"] = rec.azimuth_deg;
                d["elevation_deg"] = rec.elevation_deg;
                d["normalized_power"] = pm.normalized[i];
                d["evaluated"] = bool(pm.evaluated[i]);
                std::string marker = "not evaluated";
                if (pm.evaluated[i])
                {
                    const FitReport &r = reports[next++];
                    marker = r.gtest.rejected ? "rejected" : to_string(r.chosen);
                    d["marker"] = marker;
                    d["report"] = io::report_to_json(r, fit.settings, input);
                }
                else
                    d["marker"] = marker;
                doc["directions"].push_back(d);

                std::ostringstream row;
                row.precision(17);
                row << rec.azimuth_deg << ',' << rec.elevation_deg << ',' << pm.normalized[i] << ','
                    << (pm.evaluated[i] ? 1 : 0) << ',' << marker << '\n';
                csv += row.str();
            }

            fs::create_directories(out_dir);
            io::write_atomic(fs::path(out_dir) / "power_map.csv", csv);
            io::write_atomic(fs::path(out_dir) / "scan_report.json", doc.dump(2) + "\n");
            if (log_level() >= 1)
                std::cout << input << ": " << scan.records.size() << " directions, " << which.size()
                          << " above the noise floor\n";
            return exit_ok;
        }
    };

    struct SpatialCommand
    {
        std::string input;
        std::string out_dir = ".";
        std::size_t interp = 20;
        long tap = -1;
        FitOptions fit;

        int run()
        {
            const SpatialGrid grid = io::read_grid(input);
            CorrelationMap map;
            {
                Timer t("spatial correlation");
                map = average_corr(grid, interp, fit.serial ? Execution::serial : Execution::parallel);
            }

            auto cut_csv = [&](const std::vector<double> &cut, bool x_axis)
            {
                std::ostringstream s;
                s.precision(17);
                s << "lag_wl,correlation\n";
                for (std::size_t i = 0; i < cut.size(); ++i)
                    s << (x_axis ? map.lag_x(i) : map.lag_y(i)) << ',' << cut[i] << '\n';
                return s.str();
            };

            std::vector<std::pair<fs::path, std::string>> outputs;
            outputs.emplace_back(fs::path(out_dir) / "correlation.csv", io::format_correlation_csv(map));
            outputs.emplace_back(fs::path(out_dir) / "correlation.json", io::correlation_to_json(map).dump(2) + "\n");
            outputs.emplace_back(fs::path(out_dir) / "cut_x.csv", cut_csv(map.axis_cut_x(), true));
            outputs.emplace_back(fs::path(out_dir) / "cut_y.csv", cut_csv(map.axis_cut_y(), false));

            if (tap >= 0)
            {
                const EnvelopeSet set = tap_envelopes(grid, std::size_t(tap));
                const FitReport rep = analyze(set, fit.config());
                auto j = io::report_to_json(rep, fit.settings, input);
                j["config"]["stride"] = nullptr; // Chequerboard partition
                j["tap_index"] = tap;
                outputs.emplace_back(fs::path(out_dir) / "tap_report.json", j.dump(2) + "\n");
                print_report(input + " tap " + std::to_string(tap), rep);
            }

            fs::create_directories(out_dir);
            for (const auto &[path, text] : outputs)
                io::write_atomic(path, text);
            if (log_level() >= 1)
                std::cout << input << ": correlation map " << map.nx << " x " << map.ny << " lags, step " << map.lag_step
                          << " wavelengths\n";
            return exit_ok;
        }
    };

    struct BerCommand
    {
        double k = 10.0;
        double k_db = NAN;
        double delta = 1.0;
        double omega = 1.0;
        std::vector<double> snr_db = {0, 5, 10, 15, 20, 25, 30};
        std::size_t symbols = 1000000;
        std::uint64_t seed = 1;
        std::string out = "ber.csv";
        bool serial = false;

        int run()
        {
            FadingParams p{std::isnan(k_db) ? k : std::pow(10.0, k_db / 10.0), delta, omega};
            BerCurve curve;
            {
                Timer t("ber simulation");
                curve = simulate_ber(p, snr_db, symbols, seed, serial ? Execution::serial : Execution::parallel);
            }
            fs::path path(out);
            if (path.has_parent_path())
                fs::create_directories(path.parent_path());
            io::write_atomic(path, io::format_ber_csv(curve));
            fs::path meta = path;
            meta += ".json";
            io::write_atomic(meta, io::ber_to_json(curve).dump(2) + "\n");
            if (log_level() >= 1)
            {
                std::cout << "K " << k_text(p.k) << "  delta " << p.delta << "  capacity loss bound "
                          << capacity_loss(p.delta) << "\n";
                for (std::size_t i = 0; i < curve.snr_db.size(); ++i)
                    std::cout << "  " << curve.snr_db[i] << " dB  BER " << curve.ber[i] << " +- " << curve.std_error[i] << "\n";
            }
            return exit_ok;
        }
    };

    // Propagation direction from azimuth and polar elevation (0 = zenith, 90 = horizon)
    std::array<double, 3> direction(double az_deg, double el_deg)
    {
        const double az = az_deg * std::numbers::pi / 180.0, el = el_deg * std::numbers::pi / 180.0;
        std::array<double, 3> d = {std::sin(el) * std::cos(az), std::sin(el) * std::sin(az), std::cos(el)};
        const double n = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        for (double &c : d)
            c /= n;
        return d;
    }

    struct SynthCommand
    {
        // envelopes
        double k = 10.0, delta = 0.9, omega = 1.0;
        std::size_t n = 100000;
        std::uint64_t seed = 1;
        std::string out;

        // grid
        std::vector<std::string> waves;
        std::size_t nx = 9, ny = 9, nz = 9, nf = 1;
        double spacing = 0.35, f0 = 60e9, df = 5e6, diffuse = 0.0, jitter = 0.0;

        // scan
        double az_step = 30.0, peak_az = 0.0, beamwidth = 60.0, peak_snr_db = 30.0, elevation = 90.0;

        int envelopes()
        {
            auto s = sample_twdp(FadingParams{k, delta, omega}, n, seed);
            io::write_atomic(out, io::format_envelopes(s.envelopes()));
            return exit_ok;
        }

        int grid()
        {
            PlaneWaveScene scene;
            scene.wavelength = speed_of_light / f0;
            scene.grid.nx = nx;
            scene.grid.ny = ny;
            scene.grid.nz = nz;
            scene.grid.spacing = spacing;
            for (std::size_t i = 0; i < nf; ++i)
                scene.grid.freq_hz.push_back(f0 + double(i) * df);
            scene.diffuse_power = diffuse;
            scene.jitter = jitter;
            scene.seed = seed;
            for (const auto &w : waves)
            {
                std::vector<double> v;
                std::stringstream ss(w);
                std::string item;
                while (std::getline(ss, item, ','))
                    v.push_back(std::stod(item));
                if (v.size() < 3 || v.size() > 5)
                    throw CLI::ValidationError("--wave", "expected amplitude,azimuth_deg,elevation_deg[,phase_rad[,delay_s]]");
                PlaneWave pw;
                pw.amplitude = v[0];
                pw.direction = direction(v[1], v[2]);
                pw.phase = v.size() > 3 ? v[3] : 0.0;
                pw.delay_s = v.size() > 4 ? v[4] : 0.0;
                scene.waves.push_back(pw);
            }
            io::write_grid(out, synth_field(scene));
            return exit_ok;
        }

        int scan()
        {
            if (!(az_step > 0.0) || !(beamwidth > 0.0))
                throw std::domain_error("synth scan: azimuth step and beamwidth must be positive");
            const double noise = std::pow(10.0, -peak_snr_db / 10.0);
            DirectionalScan s;
            std::uint64_t idx = 0;
            for (double az = 0.0; az < 360.0 - 1e-9; az += az_step, ++idx)
            {
                double d = std::remainder(az - peak_az, 360.0);
                double gain = std::pow(10.0, -1.2 * (d / beamwidth) * (d / beamwidth)); // 3 dB at half beamwidth
                auto set = sample_twdp(FadingParams{k, delta, gain}, n, seed + idx);
                const RandomStream rng(seed + idx, 0x0500u);
                ScanRecord rec{az, elevation, noise, {}};
                rec.samples.resize(n);
                const double ns = std::sqrt(0.5 * noise);
                for (std::size_t i = 0; i < n; ++i)
                {
                    auto w = rng.normal2(i, 0);
                    rec.samples[i] = set.samples[i] + std::complex<double>(ns * w[0], ns * w[1]);
                }
                s.records.push_back(std::move(rec));
            }
            io::write_atomic(out, io::format_scan(s));
            return exit_ok;
        }
    };
}

int main(int argc, char **argv)
{
    CLI::App app{"twdpfit: Rice / TWDP fading identification for channel measurements"};
    app.require_subcommand(1);

    FitCommand fit_cmd;
    auto *fit = app.add_subcommand("fit", "Fit Rice and TWDP models to envelope files");
    fit->add_option("inputs", fit_cmd.inputs, "Envelope CSV files")->required()->check(CLI::ExistingFile);
    fit->add_option("-o,--out-dir", fit_cmd.out_dir, "Output directory");
    fit->add_option("--cdf-points", fit_cmd.cdf_points, "Rows of the CDF overlay table")->check(CLI::Range(2, 100000));
    fit_cmd.fit.add_to(fit);

    ScanCommand scan_cmd;
    auto *scan = app.add_subcommand("scan", "Power map and per-direction fits of a directional scan");
    scan->add_option("input", scan_cmd.input, "Scan CSV file")->required()->check(CLI::ExistingFile);
    scan->add_option("-o,--out-dir", scan_cmd.out_dir, "Output directory");
    scan->add_option("--margin-db", scan_cmd.margin_db, "Required margin above the noise power in dB");
    scan_cmd.fit.add_to(scan);

    SpatialCommand sp_cmd;
    auto *spatial = app.add_subcommand("spatial", "Spatial correlation of a measured grid");
    spatial->add_option("input", sp_cmd.input, "Grid CSV file (header in <file>.json)")->required()->check(CLI::ExistingFile);
    spatial->add_option("-o,--out-dir", sp_cmd.out_dir, "Output directory");
    spatial->add_option("--interp", sp_cmd.interp, "Lag interpolation factor")->check(CLI::Range(1, 200));
    spatial->add_option("--tap", sp_cmd.tap, "Also fit the envelopes of this CIR tap")->check(CLI::NonNegativeNumber);
    sp_cmd.fit.add_to(spatial);

    BerCommand ber_cmd;
    auto *ber = app.add_subcommand("ber", "Bit error ratio of 4-QAM with zero forcing over TWDP fading");
    auto *k_lin = ber->add_option("--k", ber_cmd.k, "K-factor (linear)")->check(CLI::NonNegativeNumber);
    ber->add_option("--k-db", ber_cmd.k_db, "K-factor in dB")->excludes(k_lin);
    ber->add_option("--delta", ber_cmd.delta, "Delta parameter")->check(CLI::Range(0.0, 1.0));
    ber->add_option("--omega", ber_cmd.omega, "Mean channel power")->check(CLI::PositiveNumber);
    ber->add_option("--snr", ber_cmd.snr_db, "SNR points in dB")->delimiter(',');
    ber->add_option("--symbols", ber_cmd.symbols, "Symbols per SNR point")->check(CLI::Range(std::size_t(10000), std::size_t(1) << 40));
    ber->add_option("--seed", ber_cmd.seed, "Random seed");
    ber->add_option("-o,--out", ber_cmd.out, "Output CSV (metadata in <file>.json)");
    ber->add_flag("--serial", ber_cmd.serial, "Single-threaded simulation");

    SynthCommand syn;
    auto *synth = app.add_subcommand("synth", "Generate synthetic input files");
    synth->require_subcommand(1);
    auto *s_env = synth->add_subcommand("envelopes", "TWDP envelope samples");
    s_env->add_option("--k", syn.k, "K-factor (linear)")->check(CLI::NonNegativeNumber);
    s_env->add_option("--delta", syn.delta, "Delta parameter")->check(CLI::Range(0.0, 1.0));
    s_env->add_option("--omega", syn.omega, "Mean envelope power")->check(CLI::PositiveNumber);
    s_env->add_option("-n,--samples", syn.n, "Number of samples")->check(CLI::PositiveNumber);
    s_env->add_option("--seed", syn.seed, "Random seed");
    s_env->add_option("-o,--out", syn.out, "Output CSV")->required();

    auto *s_grid = synth->add_subcommand("grid", "Plane-wave field on a spatial grid");
    s_grid->add_option("--wave", syn.waves, "amplitude,azimuth_deg,elevation_deg[,phase_rad[,delay_s]]")->required();
    s_grid->add_option("--nx", syn.nx, "Points along x")->check(CLI::PositiveNumber);
    s_grid->add_option("--ny", syn.ny, "Points along y")->check(CLI::PositiveNumber);
    s_grid->add_option("--nz", syn.nz, "Points along z")->check(CLI::PositiveNumber);
    s_grid->add_option("--spacing", syn.spacing, "Lattice spacing in wavelengths")->check(CLI::PositiveNumber);
    s_grid->add_option("--f0", syn.f0, "First frequency in Hz")->check(CLI::PositiveNumber);
    s_grid->add_option("--df", syn.df, "Frequency step in Hz")->check(CLI::PositiveNumber);
    s_grid->add_option("--nf", syn.nf, "Number of frequencies")->check(CLI::PositiveNumber);
    s_grid->add_option("--diffuse", syn.diffuse, "Power of an i.i.d. diffuse term")->check(CLI::NonNegativeNumber);
    s_grid->add_option("--jitter", syn.jitter, "Uniform position error bound in wavelengths")->check(CLI::NonNegativeNumber);
    s_grid->add_option("--seed", syn.seed, "Random seed");
    s_grid->add_option("-o,--out", syn.out, "Output grid CSV (header in <file>.json)")->required();

    auto *s_scan = synth->add_subcommand("scan", "Directional scan with a Gaussian beam pattern");
    s_scan->add_option("--k", syn.k, "K-factor (linear)")->check(CLI::NonNegativeNumber);
    s_scan->add_option("--delta", syn.delta, "Delta parameter")->check(CLI::Range(0.0, 1.0));
    s_scan->add_option("-n,--samples", syn.n, "Samples per direction")->check(CLI::PositiveNumber);
    s_scan->add_option("--az-step", syn.az_step, "Azimuth step in degrees");
    s_scan->add_option("--peak-az", syn.peak_az, "Azimuth of the strongest direction");
    s_scan->add_option("--beamwidth", syn.beamwidth, "3 dB width of the power pattern in degrees");
    s_scan->add_option("--peak-snr-db", syn.peak_snr_db, "Peak power over noise power in dB");
    s_scan->add_option("--elevation", syn.elevation, "Elevation of all directions in degrees")->check(CLI::Range(0.0, 180.0));
    s_scan->add_option("--seed", syn.seed, "Random seed");
    s_scan->add_option("-o,--out", syn.out, "Output scan CSV")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (fit->parsed())
            return fit_cmd.run();
        if (scan->parsed())
            return scan_cmd.run();
        if (spatial->parsed())
            return sp_cmd.run();
        if (ber->parsed())
            return ber_cmd.run();
        if (s_env->parsed())
            return syn.envelopes();
        if (s_grid->parsed())
            return syn.grid();
        if (s_scan->parsed())
            return syn.scan();
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "twdpfit: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const parse_error &e)
    {
        std::cerr << "twdpfit: input error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "twdpfit: input error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::domain_error &e)
    {
        std::cerr << "twdpfit: domain error: " << e.what() << "\n";
        return exit_domain;
    }
    catch (const estimation_error &e)
    {
        std::cerr << "twdpfit: estimation error: " << e.what() << "\n";
        return exit_domain;
    }
    catch (const numerical_error &e)
    {
        std::cerr << "twdpfit: numerical error: " << e.what() << "\n";
        return exit_numerical;
    }
    catch (const std::exception &e)
    {
        std::cerr << "twdpfit: internal error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_usage;
}
