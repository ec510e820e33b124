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

#ifndef twdp_linksim_H
#define twdp_linksim_H

#include "twdp/execution.hpp"
#include "twdp/fading.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace twdp
{
    struct BerCurve
    {
        std::vector<double> snr_db;
        std::vector<double> ber;
        std::vector<double> std_error; // Monte Carlo standard error of each BER value
        FadingParams params;
        std::size_t n_symbols = 0; // Per SNR point
        std::uint64_t seed = 0;
    };

    // Uncoded Gray-mapped 4-QAM over flat TWDP fading with an independent channel per symbol
    // and zero-forcing equalisation. Symbols have unit energy and the noise power is 1 / SNR.
    // The standard error follows from the sample variance of the per-symbol error count.
    BerCurve simulate_ber(const FadingParams &params, std::span<const double> snr_db, std::size_t n_symbols,
                          std::uint64_t seed, Execution exec = Execution::parallel);

    // Upper bound of the relative capacity loss of a TWDP channel, 1 - log2(1 + sqrt(1 - delta^2))
    double capacity_loss(double delta);
}

#endif
