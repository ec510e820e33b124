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

#ifndef twdp_io_H
#define twdp_io_H

// Text file formats of the command-line tool. All formats are plain UTF-8 text and therefore
// independent of byte order.
//
//  Envelope file  CSV, one nonnegative value per line, optional non-numeric header line,
//                 blank lines and lines starting with '#' ignored.
//  Grid file      CSV with header "ix,iy,iz,ifreq,re,im", one row per sample, and a JSON
//                 sidecar "<file>.json" holding nx, ny, nz, spacing_wl, freq_hz, azimuth_deg
//                 and elevation_deg.
//  Scan file      CSV with header "azimuth_deg,elevation_deg,noise_power,re,im"; rows with
//                 the same direction form one record, in order of first appearance.

#include "twdp/inference.hpp"
#include "twdp/linksim.hpp"
#include "twdp/measurement.hpp"
#include "twdp/spatial_grid.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace twdp::io
{
    inline constexpr int schema_version = 1;

    // Writes to a temporary file in the same directory and renames it over `path`
    void write_atomic(const std::filesystem::path &path, const std::string &content);

    // Reading throws parse_error for malformed text and std::domain_error for values outside
    // their domain; both messages carry "file:line:" context.
    std::vector<double> read_envelopes(const std::filesystem::path &path);
    std::string format_envelopes(const std::vector<double> &values);

    SpatialGrid read_grid(const std::filesystem::path &csv_path);
    void write_grid(const std::filesystem::path &csv_path, const SpatialGrid &grid);
    std::filesystem::path grid_header_path(const std::filesystem::path &csv_path);

    DirectionalScan read_scan(const std::filesystem::path &path);
    std::string format_scan(const DirectionalScan &scan);

    // Settings echoed into reports
    struct FitSettings
    {
        std::size_t stride = 10;
        AnalysisConfig analysis;
    };

    nlohmann::ordered_json report_to_json(const FitReport &report, const FitSettings &settings,
                                          const std::string &input);

    // Table r, empirical, rice, twdp, rayleigh evaluated on `points` equispaced radii
    std::string format_cdf_overlay(const std::vector<double> &fit_values, const FitReport &report,
                                   std::size_t points = 200);

    std::string format_ber_csv(const BerCurve &curve);
    nlohmann::ordered_json ber_to_json(const BerCurve &curve);

    // Matrix with one row per y-lag and one column per x-lag
    std::string format_correlation_csv(const CorrelationMap &map);
    nlohmann::ordered_json correlation_to_json(const CorrelationMap &map);
}

#endif
