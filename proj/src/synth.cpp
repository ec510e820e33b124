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

#include "twdp/synth.hpp"
#include "twdp/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace twdp
{
    namespace
    {
        constexpr std::uint32_t stream_twdp_samples = 0x0001u;
        constexpr std::uint32_t stream_field_diffuse = 0x0100u;
        constexpr std::uint32_t stream_field_jitter = 0x0101u;
    }

    SpatialGrid::SpatialGrid(std::size_t nx_, std::size_t ny_, std::size_t nz_, std::vector<double> freq_axis, double spacing_wl)
        : nx(nx_), ny(ny_), nz(nz_), nf(freq_axis.size()), spacing(spacing_wl), freq_hz(std::move(freq_axis))
    {
        h.assign(nx * ny * nz * nf, {0.0, 0.0});
    }

    void SpatialGrid::validate() const
    {
        if (nx == 0 || ny == 0 || nz == 0 || nf == 0)
            throw std::domain_error("Spatial grid dimensions must be at least 1.");
        if (!std::isfinite(spacing) || spacing <= 0.0)
            throw std::domain_error("Spatial grid spacing must be positive.");
        if (freq_hz.size() != nf)
            throw std::domain_error("Frequency axis length does not match the grid.");
        if (h.size() != nx * ny * nz * nf)
            throw std::domain_error("Spatial grid sample count does not match its dimensions.");
        for (const auto &v : h)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::domain_error("Spatial grid contains non-finite samples.");
    }

    std::vector<double> ComplexSampleSet::envelopes() const
    {
        std::vector<double> r(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i)
            r[i] = std::abs(samples[i]);
        return r;
    }

    std::complex<double> draw_twdp(const FadingParams &params, std::uint64_t seed, std::uint32_t stream, std::uint64_t index)
    {
        const auto amp = params.specular();
        const double sigma = std::sqrt(params.sigma2());
        const RandomStream rng(seed, stream);
        const auto phases = rng.uniform2(index, 0);
        const auto xy = rng.normal2(index, 1);
        const double phi1 = 2.0 * std::numbers::pi * phases[0];
        const double phi2 = 2.0 * std::numbers::pi * phases[1];
        return std::polar(amp.v1, phi1) + std::polar(amp.v2, phi2) + std::complex<double>(sigma * xy[0], sigma * xy[1]);
    }

    ComplexSampleSet sample_twdp(const FadingParams &params, std::size_t n, std::uint64_t seed, Execution exec)
    {
        params.validate();
        if (n == 0)
            throw std::domain_error("sample_twdp: at least one sample is required.");

        ComplexSampleSet out;
        out.seed = seed;
        out.params = params;
        out.samples.resize(n);

        const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
        for (long long i = 0; i < count; ++i)
            out.samples[i] = draw_twdp(params, seed, stream_twdp_samples, std::uint64_t(i));

        return out;
    }

    SpatialGrid synth_field(const PlaneWaveScene &scene, Execution exec)
    {
        if (scene.waves.empty())
            throw std::domain_error("synth_field: at least one plane wave is required.");
        if (!std::isfinite(scene.wavelength) || scene.wavelength <= 0.0)
            throw std::domain_error("synth_field: wavelength must be positive.");
        if (scene.diffuse_power < 0.0 || scene.jitter < 0.0)
            throw std::domain_error("synth_field: diffuse power and jitter must be nonnegative.");
        for (const auto &w : scene.waves)
        {
            const double norm = std::sqrt(w.direction[0] * w.direction[0] + w.direction[1] * w.direction[1] +
                                          w.direction[2] * w.direction[2]);
            if (std::abs(norm - 1.0) > 1e-12)
                throw std::domain_error("synth_field: wave directions must be unit vectors.");
            if (!std::isfinite(w.amplitude) || w.amplitude < 0.0)
                throw std::domain_error("synth_field: wave amplitudes must be nonnegative.");
        }

        std::vector<double> freqs = scene.grid.freq_hz;
        if (freqs.empty())
            freqs.push_back(speed_of_light / scene.wavelength);

        const auto &g = scene.grid;
        SpatialGrid out(g.nx, g.ny, g.nz, freqs, g.spacing);
        if (out.points() == 0)
            throw std::domain_error("synth_field: grid dimensions must be at least 1.");

        // Point positions in metres, optionally jittered
        const std::size_t n_points = out.points();
        std::vector<std::array<double, 3>> pos(n_points);
        const double unit = g.spacing * scene.wavelength;
        const RandomStream jitter_rng(scene.seed, stream_field_jitter);
        for (std::size_t iz = 0; iz < g.nz; ++iz)
            for (std::size_t iy = 0; iy < g.ny; ++iy)
                for (std::size_t ix = 0; ix < g.nx; ++ix)
                {
                    const std::size_t p = (iz * g.ny + iy) * g.nx + ix;
                    pos[p] = {ix * unit, iy * unit, iz * unit};
                    if (scene.jitter > 0.0)
                    {
                        const auto u01 = jitter_rng.uniform2(p, 0);
                        const auto u2 = jitter_rng.uniform2(p, 1);
                        const double j = scene.jitter * scene.wavelength;
                        pos[p][0] += j * (2.0 * u01[0] - 1.0);
                        pos[p][1] += j * (2.0 * u01[1] - 1.0);
                        pos[p][2] += j * (2.0 * u2[0] - 1.0);
                    }
                }

        const RandomStream diffuse_rng(scene.seed, stream_field_diffuse);
        const double diffuse_sigma = std::sqrt(0.5 * scene.diffuse_power);
        const long long n_freq = static_cast<long long>(freqs.size());

#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
        for (long long f = 0; f < n_freq; ++f)
        {
            const double wavenumber = 2.0 * std::numbers::pi * freqs[f] / speed_of_light;
            for (std::size_t p = 0; p < n_points; ++p)
            {
                std::complex<double> acc(0.0, 0.0);
                for (const auto &w : scene.waves)
                {
                    const double proj = w.direction[0] * pos[p][0] + w.direction[1] * pos[p][1] + w.direction[2] * pos[p][2];
                    const double phase = wavenumber * proj + w.phase - 2.0 * std::numbers::pi * freqs[f] * w.delay_s;
                    acc += std::polar(w.amplitude, phase);
                }
                const std::size_t idx = std::size_t(f) * n_points + p;
                if (scene.diffuse_power > 0.0)
                {
                    const auto xy = diffuse_rng.normal2(idx, 0);
                    acc += std::complex<double>(diffuse_sigma * xy[0], diffuse_sigma * xy[1]);
                }
                out.h[idx] = acc;
            }
        }
        return out;
    }
}
