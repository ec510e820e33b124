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

#include "twdp/linksim.hpp"
#include "twdp/rng.hpp"
#include "twdp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace twdp
{
    namespace
    {
        // Stream ids per SNR point p: channel 0x1000 + p, bits 0x2000 + p, noise 0x3000 + p.
        // Redraws of a zero channel use 0x4000 + p and the redraw count as index offset.
        constexpr std::uint32_t stream_channel = 0x1000u;
        constexpr std::uint32_t stream_bits = 0x2000u;
        constexpr std::uint32_t stream_noise = 0x3000u;
        constexpr std::uint32_t stream_redraw = 0x4000u;
    }

    BerCurve simulate_ber(const FadingParams &params, std::span<const double> snr_db, std::size_t n_symbols,
                          std::uint64_t seed, Execution exec)
    {
        params.validate();
        if (n_symbols < 10000)
            throw std::domain_error("simulate_ber: at least 1e4 symbols per SNR point required");
        if (snr_db.size() > 0x1000)
            throw std::domain_error("simulate_ber: too many SNR points");
        for (double s : snr_db)
            if (!std::isfinite(s))
                throw std::domain_error("simulate_ber: SNR values must be finite");

        BerCurve curve;
        curve.snr_db.assign(snr_db.begin(), snr_db.end());
        curve.ber.resize(snr_db.size());
        curve.std_error.resize(snr_db.size());
        curve.params = params;
        curve.n_symbols = n_symbols;
        curve.seed = seed;

        const double amp = std::sqrt(0.5); // Unit-energy 4-QAM
        for (std::size_t p = 0; p < snr_db.size(); ++p)
        {
            const double snr = std::pow(10.0, snr_db[p] / 10.0);
            const double noise_sigma = std::sqrt(0.5 / snr); // Per quadrature component
            const std::uint32_t pid = std::uint32_t(p);
            const RandomStream bits(seed, stream_bits + pid);
            const RandomStream noise(seed, stream_noise + pid);

            // Integer accumulators keep the reduction independent of the thread schedule
            unsigned long long errors = 0, errors_sq = 0;
            const long long n = (long long)n_symbols;
#pragma omp parallel for schedule(static) reduction(+ : errors, errors_sq) if (exec == Execution::parallel)
            for (long long i = 0; i < n; ++i)
            {
                const std::uint64_t idx = std::uint64_t(i);
                std::complex<double> h = draw_twdp(params, seed, stream_channel + pid, idx);
                for (std::uint64_t redraw = 1; std::abs(h) == 0.0; ++redraw)
                    h = draw_twdp(params, seed, stream_redraw + pid, idx + (redraw << 40));

                const auto u = bits.uniform2(idx, 0);
                const bool b0 = u[0] < 0.5, b1 = u[1] < 0.5;
                const std::complex<double> s(b0 ? -amp : amp, b1 ? -amp : amp);

                const auto w = noise.normal2(idx, 0);
                const std::complex<double> y = h * s + std::complex<double>(noise_sigma * w[0], noise_sigma * w[1]);
                const std::complex<double> z = y / h;

                const unsigned e = unsigned((z.real() < 0.0) != b0) + unsigned((z.imag() < 0.0) != b1);
                errors += e;
                errors_sq += e * e;
            }

            // Per-symbol error fraction e / 2: mean and standard error of the mean
            const double nd = double(n_symbols);
            const double mean = double(errors) / (2.0 * nd);
            const double second = double(errors_sq) / (4.0 * nd);
            const double var = std::max(0.0, second - mean * mean) * nd / (nd - 1.0);
            curve.ber[p] = mean;
            curve.std_error[p] = std::sqrt(var / nd);
        }
        return curve;
    }

    double capacity_loss(double delta)
    {
        if (!(delta >= 0.0 && delta <= 1.0))
            throw std::domain_error("capacity_loss: delta must lie in [0, 1]");
        return 1.0 - std::log2(1.0 + std::sqrt(1.0 - delta * delta));
    }
}
