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

#include <catch2/catch_amalgamated.hpp>

#include "schema_validator.hpp"
#include "twdp/errors.hpp"
#include "twdp/io.hpp"
#include "twdp/synth.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace twdp;
namespace fs = std::filesystem;

namespace
{
    struct TempDir
    {
        fs::path path;
        TempDir()
        {
            path = fs::temp_directory_path() / ("twdp_io_" + std::to_string(Catch::getSeed()) + "_" +
                                                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
    };

    void write_text(const fs::path &p, const std::string &s)
    {
        std::ofstream out(p, std::ios::binary);
        out << s;
    }

    std::string read_text(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    nlohmann::json load_schema()
    {
        return nlohmann::json::parse(read_text(fs::path(TWDP_SCHEMA_DIR) / "fit_report.schema.json"));
    }
}

TEST_CASE("Envelope files round trip exactly")
{
    TempDir dir;
    auto v = sample_twdp({3.0, 0.4, 1.7}, 1000, 5).envelopes();
    v.push_back(0.0);
    v.push_back(1e-300);
    const auto file = dir.path / "env.csv";
    io::write_atomic(file, io::format_envelopes(v));
    CHECK(io::read_envelopes(file) == v);
    CHECK(fs::exists(file));
    CHECK_FALSE(fs::exists(dir.path / "env.csv.tmp"));
}

TEST_CASE("Envelope file parsing")
{
    TempDir dir;
    const auto file = dir.path / "e.csv";

    write_text(file, "# comment\n\namplitude\n1.5\n  2.0  \n# mid comment\n3e-1\n");
    CHECK(io::read_envelopes(file) == std::vector<double>{1.5, 2.0, 0.3});

    write_text(file, "1.0\n2.0\n");
    CHECK(io::read_envelopes(file) == std::vector<double>{1.0, 2.0});

    write_text(file, "");
    CHECK(io::read_envelopes(file).empty());

    write_text(file, "envelope\n1.0\nabc\n");
    try
    {
        io::read_envelopes(file);
        FAIL("no exception");
    }
    catch (const parse_error &e)
    {
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("e.csv:3:"));
    }

    write_text(file, "envelope\n1.0\n-2.0\n");
    try
    {
        io::read_envelopes(file);
        FAIL("no exception");
    }
    catch (const std::domain_error &e)
    {
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("e.csv:3:"));
    }

    write_text(file, "envelope\nnan\n");
    CHECK_THROWS_AS(io::read_envelopes(file), std::domain_error);
    write_text(file, "envelope\n1.0,2.0\n");
    CHECK_THROWS_AS(io::read_envelopes(file), parse_error);
    CHECK_THROWS(io::read_envelopes(dir.path / "missing.csv"));
}

TEST_CASE("Grid files round trip")
{
    TempDir dir;
    PlaneWaveScene s;
    s.waves = {PlaneWave{1.0, {0.0, 0.6, 0.8}, 0.2, 1e-9}};
    s.grid.nx = 3;
    s.grid.ny = 4;
    s.grid.nz = 2;
    s.grid.spacing = 0.4;
    s.grid.freq_hz = {59e9, 59.005e9, 59.01e9};
    s.diffuse_power = 0.1;
    s.seed = 3;
    auto g = synth_field(s);
    g.azimuth_deg = 12.5;
    g.elevation_deg = 80.0;

    const auto file = dir.path / "grid.csv";
    io::write_grid(file, g);
    CHECK(io::grid_header_path(file) == dir.path / "grid.csv.json");
    CHECK(fs::exists(io::grid_header_path(file)));
    auto back = io::read_grid(file);
    CHECK(back.nx == 3);
    CHECK(back.ny == 4);
    CHECK(back.nz == 2);
    CHECK(back.nf == 3);
    CHECK(back.spacing == 0.4);
    CHECK(back.freq_hz == g.freq_hz);
    CHECK(back.azimuth_deg == 12.5);
    CHECK(back.elevation_deg == 80.0);
    CHECK(back.h == g.h);

    SECTION("Missing sample")
    {
        std::string text = read_text(file);
        text.erase(text.find_last_of('\n', text.size() - 2) + 1);
        write_text(file, text);
        CHECK_THROWS_AS(io::read_grid(file), parse_error);
    }
    SECTION("Duplicate sample")
    {
        std::string text = read_text(file);
        std::string first = text.substr(text.find('\n') + 1);
        first = first.substr(0, first.find('\n') + 1);
        write_text(file, text + first);
        CHECK_THROWS_AS(io::read_grid(file), parse_error);
    }
    SECTION("Bad header")
    {
        std::string text = read_text(file);
        write_text(file, "x,y,z,f,re,im" + text.substr(text.find('\n')));
        CHECK_THROWS_AS(io::read_grid(file), parse_error);
    }
    SECTION("Index out of range")
    {
        write_text(file, read_text(file) + "9,0,0,0,1,1\n");
        CHECK_THROWS_AS(io::read_grid(file), parse_error);
    }
    SECTION("Missing sidecar")
    {
        fs::remove(io::grid_header_path(file));
        CHECK_THROWS(io::read_grid(file));
    }
}

TEST_CASE("Scan files round trip")
{
    TempDir dir;
    DirectionalScan scan;
    scan.records.push_back(ScanRecord{0.0, 90.0, 0.01, {{1.0, 0.5}, {0.25, -1.0}}});
    scan.records.push_back(ScanRecord{15.0, 75.0, 0.02, {{0.1, 0.0}}});
    const auto file = dir.path / "scan.csv";
    io::write_atomic(file, io::format_scan(scan));
    auto back = io::read_scan(file);
    REQUIRE(back.records.size() == 2);
    CHECK(back.records[0].samples == scan.records[0].samples);
    CHECK(back.records[1].azimuth_deg == 15.0);
    CHECK(back.records[1].noise_power == 0.02);

    write_text(file, "azimuth_deg,elevation_deg,noise_power,re,im\n0,90,0.1,1,0\n0,90,0.2,1,0\n");
    CHECK_THROWS_AS(io::read_scan(file), parse_error);
    write_text(file, "azimuth_deg,elevation_deg,noise_power,re,im\n400,90,0.1,1,0\n");
    CHECK_THROWS_AS(io::read_scan(file), std::domain_error);
    write_text(file, "az,el,noise,re,im\n0,90,0.1,1,0\n");
    CHECK_THROWS_AS(io::read_scan(file), parse_error);
}

TEST_CASE("Fit report JSON")
{
    AnalysisConfig cfg;
    cfg.grid.k_max = 30.0;
    auto set = partition_stride(sample_twdp({6.0, 0.8, 1.0}, 10000, 8).envelopes(), 10);
    auto rep = analyze(set, cfg);
    io::FitSettings settings{10, cfg};
    auto j = io::report_to_json(rep, settings, "data.csv");
    const auto parsed = nlohmann::json::parse(j.dump());
    const auto schema = load_schema();

    CHECK(schema::check(parsed, schema).empty());
    CHECK(parsed["schema_version"] == io::schema_version);
    CHECK(parsed["chosen"] == to_string(rep.chosen));
    CHECK(parsed["twdp"]["k"].get<double>() == rep.twdp.k);
    CHECK(parsed["gtest"]["dof"].get<int>() == rep.gtest.dof);
    CHECK(parsed["config"]["k_max"].get<double>() == 30.0);

    SECTION("Identical inputs give byte-identical reports")
    {
        auto again = io::report_to_json(analyze(set, cfg), settings, "data.csv");
        CHECK(again.dump() == j.dump());
    }
    SECTION("Schema rejects malformed reports")
    {
        auto bad = parsed;
        bad["chosen"] = "nakagami";
        CHECK_FALSE(schema::check(bad, schema).empty());
        bad = parsed;
        bad["twdp"].erase("delta");
        CHECK_FALSE(schema::check(bad, schema).empty());
        bad = parsed;
        bad["extra"] = 1;
        CHECK_FALSE(schema::check(bad, schema).empty());
        bad = parsed;
        bad["twdp"]["delta"] = 1.5;
        CHECK_FALSE(schema::check(bad, schema).empty());
        bad = parsed;
        bad["n_fit"] = 10.5;
        CHECK_FALSE(schema::check(bad, schema).empty());
        bad = parsed;
        bad["schema_version"] = 2;
        CHECK_FALSE(schema::check(bad, schema).empty());
    }
    SECTION("CDF overlay")
    {
        auto csv = io::format_cdf_overlay(set.fit_values(), rep, 50);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "r,empirical,rice,twdp,rayleigh");
        int rows = 0;
        double last_emp = -1.0;
        while (std::getline(in, line))
        {
            ++rows;
            double r, emp, rice, tw, ray;
            char c;
            std::istringstream ls(line);
            ls >> r >> c >> emp >> c >> rice >> c >> tw >> c >> ray;
            CHECK(emp >= last_emp);
            CHECK((rice >= 0.0 && rice <= 1.0 && tw >= 0.0 && tw <= 1.0 && ray >= 0.0 && ray <= 1.0));
            last_emp = emp;
        }
        CHECK(rows == 50);
        CHECK(last_emp == 1.0);
    }
}

TEST_CASE("BER and correlation outputs")
{
    const std::vector<double> snr = {0.0, 10.0};
    auto c = simulate_ber({10.0, 1.0, 1.0}, snr, 10000, 1);
    auto csv = io::format_ber_csv(c);
    CHECK(csv.rfind("snr_db,ber,std_error\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    auto j = io::ber_to_json(c);
    CHECK(j["capacity_loss_bound"].get<double>() == 1.0);
    CHECK(j["n_symbols"].get<std::size_t>() == 10000);

    std::vector<double> ones(9, 1.0);
    auto m = autocorr2d(ones, 3, 3, 0.35);
    auto mc = io::format_correlation_csv(m);
    CHECK(std::count(mc.begin(), mc.end(), '\n') == 5);
    auto mj = io::correlation_to_json(m);
    CHECK(mj["nx"].get<std::size_t>() == 5);
    CHECK(mj["x_lag_range_wl"][0].get<double>() == Catch::Approx(-0.7));
}
