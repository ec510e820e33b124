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

#include "twdp/io.hpp"
#include "twdp/errors.hpp"
#include "twdp/fading.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

namespace twdp::io
{
    namespace
    {
        std::string trim(std::string_view s)
        {
            std::size_t a = 0, b = s.size();
            while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r'))
                ++a;
            while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r'))
                --b;
            return std::string(s.substr(a, b - a));
        }

        std::vector<std::string> split(const std::string &line)
        {
            std::vector<std::string> out;
            std::size_t start = 0;
            while (true)
            {
                std::size_t pos = line.find(',', start);
                out.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
                if (pos == std::string::npos)
                    break;
                start = pos + 1;
            }
            return out;
        }

        bool parse_double(const std::string &s, double &v)
        {
            if (s.empty())
                return false;
            const char *first = s.data();
            if (*first == '+')
                ++first;
            auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
            return ec == std::errc() && ptr == s.data() + s.size();
        }

        bool parse_index(const std::string &s, std::size_t &v)
        {
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
        }

        std::string where(const std::filesystem::path &path, std::size_t line)
        {
            return path.string() + ":" + std::to_string(line) + ": ";
        }

        std::ifstream open_input(const std::filesystem::path &path)
        {
            std::ifstream in(path);
            if (!in)
                throw parse_error(path.string() + ": cannot open file");
            return in;
        }

        // Shortest text that reads back to the same double
        std::string num(double v)
        {
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, ptr);
        }

        nlohmann::json read_json(const std::filesystem::path &path)
        {
            std::ifstream in = open_input(path);
            try
            {
                return nlohmann::json::parse(in);
            }
            catch (const nlohmann::json::exception &e)
            {
                throw parse_error(path.string() + ": " + e.what());
            }
        }
    }

    void write_atomic(const std::filesystem::path &path, const std::string &content)
    {
        std::filesystem::path tmp = path;
        tmp += ".tmp." + std::to_string(::getpid());
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error(tmp.string() + ": cannot open for writing");
            out << content;
            out.flush();
            if (!out)
            {
                out.close();
                std::filesystem::remove(tmp);
                throw std::runtime_error(tmp.string() + ": write failed");
            }
        }
        std::filesystem::rename(tmp, path);
    }

    // ---------------------------------------------------------------------------------------

    std::vector<double> read_envelopes(const std::filesystem::path &path)
    {
        std::ifstream in = open_input(path);
        std::vector<double> values;
        std::string line;
        std::size_t lineno = 0;
        bool seen_content = false;
        while (std::getline(in, line))
        {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#')
                continue;
            double v;
            if (!parse_double(t, v))
            {
                if (!seen_content)
                {
                    seen_content = true; // Header line
                    continue;
                }
                throw parse_error(where(path, lineno) + "expected one number per line, got '" + t + "'");
            }
            seen_content = true;
            if (!std::isfinite(v) || v < 0.0)
                throw std::domain_error(where(path, lineno) + "envelope values must be finite and nonnegative");
            values.push_back(v);
        }
        return values;
    }

    std::string format_envelopes(const std::vector<double> &values)
    {
        std::string out = "envelope\n";
        for (double v : values)
        {
            out += num(v);
            out += '\n';
        }
        return out;
    }

    // ---------------------------------------------------------------------------------------

    std::filesystem::path grid_header_path(const std::filesystem::path &csv_path)
    {
        std::filesystem::path p = csv_path;
        p += ".json";
        return p;
    }

    SpatialGrid read_grid(const std::filesystem::path &csv_path)
    {
        const auto hpath = grid_header_path(csv_path);
        nlohmann::json hdr = read_json(hpath);
        SpatialGrid grid;
        try
        {
            grid = SpatialGrid(hdr.at("nx").get<std::size_t>(), hdr.at("ny").get<std::size_t>(),
                               hdr.at("nz").get<std::size_t>(), hdr.at("freq_hz").get<std::vector<double>>(),
                               hdr.value("spacing_wl", 0.35));
            grid.azimuth_deg = hdr.value("azimuth_deg", 0.0);
            grid.elevation_deg = hdr.value("elevation_deg", 90.0);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw parse_error(hpath.string() + ": " + e.what());
        }

        std::ifstream in = open_input(csv_path);
        std::vector<bool> seen(grid.h.size(), false);
        std::string line;
        std::size_t lineno = 0, rows = 0;
        bool header = false;
        while (std::getline(in, line))
        {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#')
                continue;
            if (!header)
            {
                if (t != "ix,iy,iz,ifreq,re,im")
                    throw parse_error(where(csv_path, lineno) + "expected header ix,iy,iz,ifreq,re,im");
                header = true;
                continue;
            }
            auto f = split(t);
            std::size_t ix, iy, iz, ifr;
            double re, im;
            if (f.size() != 6 || !parse_index(f[0], ix) || !parse_index(f[1], iy) || !parse_index(f[2], iz) ||
                !parse_index(f[3], ifr) || !parse_double(f[4], re) || !parse_double(f[5], im))
                throw parse_error(where(csv_path, lineno) + "malformed grid row");
            if (ix >= grid.nx || iy >= grid.ny || iz >= grid.nz || ifr >= grid.nf)
                throw parse_error(where(csv_path, lineno) + "grid index outside the header dimensions");
            const std::size_t idx = grid.index(ix, iy, iz, ifr);
            if (seen[idx])
                throw parse_error(where(csv_path, lineno) + "duplicate grid sample");
            seen[idx] = true;
            grid.h[idx] = {re, im};
            ++rows;
        }
        if (!header)
            throw parse_error(csv_path.string() + ": empty grid file");
        if (rows != grid.h.size())
            throw parse_error(csv_path.string() + ": expected " + std::to_string(grid.h.size()) + " samples, found " +
                              std::to_string(rows));
        grid.validate();
        return grid;
    }

    void write_grid(const std::filesystem::path &csv_path, const SpatialGrid &grid)
    {
        grid.validate();
        nlohmann::ordered_json hdr;
        hdr["schema_version"] = schema_version;
        hdr["nx"] = grid.nx;
        hdr["ny"] = grid.ny;
        hdr["nz"] = grid.nz;
        hdr["spacing_wl"] = grid.spacing;
        hdr["azimuth_deg"] = grid.azimuth_deg;
        hdr["elevation_deg"] = grid.elevation_deg;
        hdr["freq_hz"] = grid.freq_hz;

        std::string out = "ix,iy,iz,ifreq,re,im\n";
        for (std::size_t f = 0; f < grid.nf; ++f)
            for (std::size_t iz = 0; iz < grid.nz; ++iz)
                for (std::size_t iy = 0; iy < grid.ny; ++iy)
                    for (std::size_t ix = 0; ix < grid.nx; ++ix)
                    {
                        const auto &v = grid.at(ix, iy, iz, f);
                        out += std::to_string(ix) + ',' + std::to_string(iy) + ',' + std::to_string(iz) + ',' +
                               std::to_string(f) + ',' + num(v.real()) + ',' + num(v.imag()) + '\n';
                    }
        write_atomic(grid_header_path(csv_path), hdr.dump(2) + "\n");
        write_atomic(csv_path, out);
    }

    // ---------------------------------------------------------------------------------------

    DirectionalScan read_scan(const std::filesystem::path &path)
    {
        std::ifstream in = open_input(path);
        DirectionalScan scan;
        std::map<std::pair<double, double>, std::size_t> index;
        std::string line;
        std::size_t lineno = 0;
        bool header = false;
        while (std::getline(in, line))
        {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#')
                continue;
            if (!header)
            {
                if (t != "azimuth_deg,elevation_deg,noise_power,re,im")
                    throw parse_error(where(path, lineno) + "expected header azimuth_deg,elevation_deg,noise_power,re,im");
                header = true;
                continue;
            }
            auto f = split(t);
            double az, el, np, re, im;
            if (f.size() != 5 || !parse_double(f[0], az) || !parse_double(f[1], el) || !parse_double(f[2], np) ||
                !parse_double(f[3], re) || !parse_double(f[4], im))
                throw parse_error(where(path, lineno) + "malformed scan row");
            auto key = std::make_pair(az, el);
            auto it = index.find(key);
            if (it == index.end())
            {
                it = index.emplace(key, scan.records.size()).first;
                scan.records.push_back(ScanRecord{az, el, np, {}});
            }
            ScanRecord &rec = scan.records[it->second];
            if (rec.noise_power != np)
                throw parse_error(where(path, lineno) + "noise power differs within one direction");
            rec.samples.emplace_back(re, im);
        }
        try
        {
            scan.validate();
        }
        catch (const std::domain_error &e)
        {
            throw std::domain_error(path.string() + ": " + e.what());
        }
        return scan;
    }

    std::string format_scan(const DirectionalScan &scan)
    {
        std::string out = "azimuth_deg,elevation_deg,noise_power,re,im\n";
        for (const auto &r : scan.records)
        {
            const std::string prefix = num(r.azimuth_deg) + ',' + num(r.elevation_deg) + ',' + num(r.noise_power) + ',';
            for (const auto &s : r.samples)
                out += prefix + num(s.real()) + ',' + num(s.imag()) + '\n';
        }
        return out;
    }

    // ---------------------------------------------------------------------------------------

    nlohmann::ordered_json report_to_json(const FitReport &rep, const FitSettings &settings, const std::string &input)
    {
        nlohmann::ordered_json j;
        j["schema_version"] = schema_version;
        j["input"] = input;
        j["omega_hat"] = rep.omega_hat;
        j["n_fit"] = rep.n_fit;
        j["n_moment"] = rep.n_moment;
        j["rice"] = {{"k", rep.rice.k},
                     {"loglik", rep.rice.loglik},
                     {"aicc", rep.rice.aicc},
                     {"k_at_boundary", rep.rice.k_at_boundary}};
        j["twdp"] = {{"k", rep.twdp.k},
                     {"delta", rep.twdp.delta},
                     {"loglik", rep.twdp.loglik},
                     {"aicc", rep.twdp.aicc},
                     {"k_at_boundary", rep.twdp.k_at_boundary}};
        j["chosen"] = to_string(rep.chosen);
        j["gtest"] = {{"g", rep.gtest.g},
                      {"dof", rep.gtest.dof},
                      {"alpha", rep.gtest.alpha},
                      {"threshold", rep.gtest.threshold},
                      {"verdict", rep.gtest.rejected ? "rejected" : "accepted"}};
        const auto &g = settings.analysis.grid;
        j["config"] = {{"stride", settings.stride},
                       {"k_min", g.k_min},
                       {"k_max", g.k_max},
                       {"k_step", g.k_step},
                       {"delta_step", g.delta_step},
                       {"alpha", settings.analysis.alpha},
                       {"per_cell", settings.analysis.per_cell}};
        return j;
    }

    std::string format_cdf_overlay(const std::vector<double> &fit_values, const FitReport &rep, std::size_t points)
    {
        if (fit_values.empty() || points < 2)
            throw std::domain_error("format_cdf_overlay: need fit values and at least two points");
        std::vector<double> x(fit_values);
        std::sort(x.begin(), x.end());
        const double r_max = 1.2 * x.back();
        const FadingParams tw{rep.twdp.k, rep.twdp.delta, rep.omega_hat};

        std::vector<double> r(points), twdp(points);
        for (std::size_t i = 0; i < points; ++i)
            r[i] = r_max * double(i) / double(points - 1);
        const long long n = (long long)points;
#pragma omp parallel for schedule(dynamic, 4)
        for (long long i = 0; i < n; ++i)
            twdp[std::size_t(i)] = twdp_cdf(r[std::size_t(i)], tw);

        std::string out = "r,empirical,rice,twdp,rayleigh\n";
        for (std::size_t i = 0; i < points; ++i)
        {
            double emp = double(std::upper_bound(x.begin(), x.end(), r[i]) - x.begin()) / double(x.size());
            out += num(r[i]) + ',' + num(emp) + ',' + num(rice_cdf(r[i], rep.rice.k, rep.omega_hat)) + ',' +
                   num(twdp[i]) + ',' + num(rayleigh_cdf(r[i], rep.omega_hat)) + '\n';
        }
        return out;
    }

    // ---------------------------------------------------------------------------------------

    std::string format_ber_csv(const BerCurve &curve)
    {
        std::string out = "snr_db,ber,std_error\n";
        for (std::size_t i = 0; i < curve.snr_db.size(); ++i)
            out += num(curve.snr_db[i]) + ',' + num(curve.ber[i]) + ',' + num(curve.std_error[i]) + '\n';
        return out;
    }

    nlohmann::ordered_json ber_to_json(const BerCurve &curve)
    {
        nlohmann::ordered_json j;
        j["schema_version"] = schema_version;
        j["modulation"] = "4-QAM Gray";
        j["equaliser"] = "zero-forcing";
        j["k"] = curve.params.k;
        j["delta"] = curve.params.delta;
        j["omega"] = curve.params.omega;
        j["n_symbols"] = curve.n_symbols;
        j["seed"] = curve.seed;
        j["capacity_loss_bound"] = capacity_loss(curve.params.delta);
        return j;
    }

    std::string format_correlation_csv(const CorrelationMap &map)
    {
        std::string out;
        for (std::size_t j = 0; j < map.ny; ++j)
        {
            for (std::size_t i = 0; i < map.nx; ++i)
            {
                if (i)
                    out += ',';
                out += map.valid[i + map.nx * j] ? num(map.at(i, j)) : std::string("nan");
            }
            out += '\n';
        }
        return out;
    }

    nlohmann::ordered_json correlation_to_json(const CorrelationMap &map)
    {
        nlohmann::ordered_json j;
        j["schema_version"] = schema_version;
        j["quantity"] = "spatial autocorrelation of the real part, normalised to zero lag";
        j["units"] = "wavelengths";
        j["lag_step_wl"] = map.lag_step;
        j["nx"] = map.nx;
        j["ny"] = map.ny;
        j["x_lag_range_wl"] = {map.lag_x(0), map.lag_x(map.nx - 1)};
        j["y_lag_range_wl"] = {map.lag_y(0), map.lag_y(map.ny - 1)};
        j["layout"] = "rows are y-lags ascending, columns are x-lags ascending";
        return j;
    }
}
