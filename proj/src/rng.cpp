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

#include "twdp/rng.hpp"

#include <cmath>
#include <numbers>

namespace twdp
{
    namespace
    {
        constexpr std::uint32_t philox_m0 = 0xD2511F53u;
        constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
        constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
        constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
        {
            const std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
            hi = std::uint32_t(p >> 32);
            lo = std::uint32_t(p);
        }

        inline double to_open_unit(std::uint32_t hi, std::uint32_t lo)
        {
            const std::uint64_t bits = (std::uint64_t(hi) << 32) | lo;
            return (double(bits >> 11) + 0.5) * 0x1.0p-53;
        }
    }

    Philox4x32::counter_type Philox4x32::generate(counter_type c, key_type k)
    {
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                k[0] += philox_w0;
                k[1] += philox_w1;
            }
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(philox_m0, c[0], hi0, lo0);
            mulhilo(philox_m1, c[2], hi1, lo1);
            c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        }
        return c;
    }

    std::array<double, 2> RandomStream::uniform2(std::uint64_t index, std::uint32_t draw) const
    {
        const Philox4x32::counter_type ctr = {std::uint32_t(index), std::uint32_t(index >> 32), stream_, draw};
        const Philox4x32::key_type key = {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)};
        const auto out = Philox4x32::generate(ctr, key);
        return {to_open_unit(out[0], out[1]), to_open_unit(out[2], out[3])};
    }

    std::array<double, 2> RandomStream::normal2(std::uint64_t index, std::uint32_t draw) const
    {
        const auto u = uniform2(index, draw);
        const double radius = std::sqrt(-2.0 * std::log(u[0]));
        const double angle = 2.0 * std::numbers::pi * u[1];
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }
}
