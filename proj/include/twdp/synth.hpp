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

#ifndef twdp_synth_H
#define twdp_synth_H

#include "twdp/execution.hpp"
#include "twdp/fading.hpp"
#include "twdp/spatial_grid.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace twdp
{
    struct ComplexSampleSet
    {
        std::vector<std::complex<double>> samples;
        std::uint64_t seed = 0;
        FadingParams params;

        std::vector<double> envelopes() const;
    };

    // Draws n baseband samples V1 e^{j phi1} + V2 e^{j phi2} + X + jY.
    // Sample i depends only on (seed, i): the result is identical for serial and parallel
    // execution and for any thread count.
    ComplexSampleSet sample_twdp(const FadingParams &params, std::size_t n, std::uint64_t seed,
                                 Execution exec = Execution::parallel);

    // Draws a single TWDP channel coefficient for (stream, index). Used by the link simulator.
    std::complex<double> draw_twdp(const FadingParams &params, std::uint64_t seed, std::uint32_t stream,
                                   std::uint64_t index);

    struct PlaneWave
    {
        double amplitude = 1.0;
        std::array<double, 3> direction = {1.0, 0.0, 0.0}; // Unit propagation vector
        double phase = 0.0;                                // Radians
        double delay_s = 0.0;                              // Adds -2 pi f delay to the phase
    };

    struct GridGeometry
    {
        std::size_t nx = 9, ny = 9, nz = 9;
        double spacing = 0.35;       // Wavelengths
        std::vector<double> freq_hz; // Empty: single frequency c / wavelength
    };

    struct PlaneWaveScene
    {
        std::vector<PlaneWave> waves;
        double wavelength = speed_of_light / 60e9; // Metres, defines the lattice unit
        GridGeometry grid;
        double diffuse_power = 0.0; // Mean power of an i.i.d. complex Gaussian term per sample
        double jitter = 0.0;        // Uniform position error bound in wavelengths (e.g. 0.004)
        std::uint64_t seed = 0;     // Used by the diffuse term and the jitter
    };

    // Superposition of plane waves on the scene's lattice:
    //   H(x, f) = sum_w A_w exp(j (2 pi f / c) d_w . x + j phi_w - j 2 pi f tau_w)  [+ diffuse]
    SpatialGrid synth_field(const PlaneWaveScene &scene, Execution exec = Execution::parallel);
}

#endif
