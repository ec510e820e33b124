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

#ifndef twdp_spatial_grid_H
#define twdp_spatial_grid_H

#include <complex>
#include <cstddef>
#include <vector>

namespace twdp
{
    inline constexpr double speed_of_light = 299792458.0; // m/s

    // Complex channel samples on a uniform (x, y, z) lattice at one or more frequencies.
    // Storage order: x fastest, then y, z, frequency.
    struct SpatialGrid
    {
        std::size_t nx = 0, ny = 0, nz = 0, nf = 0;
        double spacing = 0.35;        // Lattice spacing in wavelengths
        std::vector<double> freq_hz;  // Frequency axis, length nf
        double azimuth_deg = 0.0;     // Pointing direction metadata
        double elevation_deg = 90.0;
        std::vector<std::complex<double>> h;

        SpatialGrid() = default;
        SpatialGrid(std::size_t nx_, std::size_t ny_, std::size_t nz_, std::vector<double> freq_axis, double spacing_wl = 0.35);

        std::size_t points() const { return nx * ny * nz; }

        std::size_t index(std::size_t ix, std::size_t iy, std::size_t iz, std::size_t ifreq) const
        {
            return ((ifreq * nz + iz) * ny + iy) * nx + ix;
        }

        std::complex<double> &at(std::size_t ix, std::size_t iy, std::size_t iz, std::size_t ifreq)
        {
            return h[index(ix, iy, iz, ifreq)];
        }
        const std::complex<double> &at(std::size_t ix, std::size_t iy, std::size_t iz, std::size_t ifreq) const
        {
            return h[index(ix, iy, iz, ifreq)];
        }

        // Throws std::domain_error on empty dimensions, non-positive spacing, size mismatch
        // or non-finite samples
        void validate() const;
    };
}

#endif
