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

#ifndef twdp_measurement_H
#define twdp_measurement_H

#include "twdp/execution.hpp"
#include "twdp/inference.hpp"
#include "twdp/spatial_grid.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace twdp
{
    // ---------------------------------------------------------------------------------------
    // Directional scans

    // Samples recorded while the antenna points in one direction
    struct ScanRecord
    {
        double azimuth_deg = 0.0;   // [0, 360)
        double elevation_deg = 0.0; // [0, 180]
        double noise_power = 0.0;   // Noise power estimate, same units as |sample|^2
        std::vector<std::complex<double>> samples;

        // Mean of |sample|^2 over all samples
        double mean_power() const;
    };

    struct DirectionalScan
    {
        std::vector<ScanRecord> records;

        // Throws std::domain_error on out-of-range angles, missing or non-positive noise
        // estimates, empty or non-finite sample records
        void validate() const;
    };

    // True where the mean received power is at least margin_db above the noise power
    std::vector<bool> noise_mask(const DirectionalScan &scan, double margin_db = 10.0);

    struct PowerMap
    {
        std::vector<double> normalized; // Mean power / maximum over evaluated directions
        std::vector<bool> evaluated;    // noise_mask
    };

    PowerMap power_map(const DirectionalScan &scan, double margin_db = 10.0);

    // ---------------------------------------------------------------------------------------
    // Spatial correlation

    // Real correlation on a centred lag lattice. Index (i, j) corresponds to the lag
    // ((i - (nx - 1) / 2) step, (j - (ny - 1) / 2) step) in wavelengths; storage is x fastest.
    struct CorrelationMap
    {
        std::size_t nx = 0, ny = 0; // Odd lag counts
        double lag_step = 0.0;      // Wavelengths
        std::vector<double> values;
        std::vector<bool> valid; // False where the window correlation vanishes

        double at(std::size_t i, std::size_t j) const { return values[i + nx * j]; }
        double lag_x(std::size_t i) const { return (double(i) - double(nx - 1) / 2.0) * lag_step; }
        double lag_y(std::size_t j) const { return (double(j) - double(ny - 1) / 2.0) * lag_step; }

        std::vector<double> axis_cut_x() const; // Along x at zero y-lag
        std::vector<double> axis_cut_y() const; // Along y at zero x-lag
    };

    // Window-compensated autocorrelation of a real nx-by-ny field (x fastest) with lattice
    // spacing `spacing` in wavelengths. The field is zero padded to 2nx-by-2ny so the circular
    // correlation of the DFT equals the linear one, the power spectrum is inverse transformed
    // and the result divided element-wise by the same correlation of an all-ones window. The
    // output has (2nx - 1)(2ny - 1) lags and is normalised to 1 at zero lag.
    CorrelationMap autocorr2d(std::span<const double> field, std::size_t nx, std::size_t ny, double spacing = 1.0);

    // Mean of autocorr2d over the real parts of all (z, frequency) slices of the grid, then
    // band-limited interpolation onto a lag lattice refined by interp_factor.
    CorrelationMap average_corr(const SpatialGrid &grid, std::size_t interp_factor = 20,
                                Execution exec = Execution::parallel);

    // Band-limited (zero-padded DFT) refinement of a correlation map
    CorrelationMap interpolate(const CorrelationMap &map, std::size_t factor);

    // ---------------------------------------------------------------------------------------
    // Delay domain

    struct ImpulseResponse
    {
        std::vector<std::complex<double>> taps;
        std::vector<double> delay_s;
        double delay_resolution_s = 0.0; // 1 / (N f_spacing)
        double tap_width_m = 0.0;        // c0 / (N f_spacing)
    };

    // Inverse DFT with 1/N normalisation of N >= 2 equally spaced frequency samples
    ImpulseResponse cir(std::span<const std::complex<double>> spectrum, double f_spacing);

    // As above; the axis must be uniform within 1e-6 of its spacing
    ImpulseResponse cir(std::span<const std::complex<double>> spectrum, std::span<const double> freq_hz);

    // (tau - tau_LOS) c0 for every delay on the axis
    std::vector<double> excess_distance(std::span<const double> delay_s, double los_delay_s);

    // |CIR tap| at every spatial point of the grid, labelled with the chequerboard partition
    EnvelopeSet tap_envelopes(const SpatialGrid &grid, std::size_t tap_index, Execution exec = Execution::parallel);
}

#endif
