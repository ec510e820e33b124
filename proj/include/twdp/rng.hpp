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

#ifndef twdp_rng_H
#define twdp_rng_H

#include <array>
#include <cstdint>

namespace twdp
{
    // Philox4x32-10 counter-based generator (Salmon et al., "Parallel random numbers: as easy
    // as 1, 2, 3", SC'11). The output block is a pure function of (counter, key), so any sample
    // can be drawn independently of all others and parallel streams need no coordination.
    struct Philox4x32
    {
        using counter_type = std::array<std::uint32_t, 4>;
        using key_type = std::array<std::uint32_t, 2>;

        static counter_type generate(counter_type counter, key_type key);
    };

    // A named stream of Philox blocks. The counter is laid out as
    //   (index low word, index high word, stream id, draw number)
    // and the key is the 64-bit seed.
    class RandomStream
    {
    public:
        RandomStream(std::uint64_t seed, std::uint32_t stream_id) : seed_(seed), stream_(stream_id) {}

        // Two uniforms in the open interval (0, 1) with 53-bit resolution
        std::array<double, 2> uniform2(std::uint64_t index, std::uint32_t draw) const;

        // Two independent N(0, 1) draws (Box-Muller on open-interval uniforms)
        std::array<double, 2> normal2(std::uint64_t index, std::uint32_t draw) const;

        std::uint64_t seed() const { return seed_; }
        std::uint32_t stream_id() const { return stream_; }

    private:
        std::uint64_t seed_;
        std::uint32_t stream_;
    };
}

#endif
