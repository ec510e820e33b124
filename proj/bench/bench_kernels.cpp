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

// Serial reference against OpenMP kernels on identical inputs

#include <benchmark/benchmark.h>

#include "twdp/inference.hpp"
#include "twdp/linksim.hpp"
#include "twdp/measurement.hpp"
#include "twdp/synth.hpp"

using namespace twdp;

namespace
{
    Execution mode(const benchmark::State &state) { return state.range(0) ? Execution::parallel : Execution::serial; }

    void set_label(benchmark::State &state) { state.SetLabel(state.range(0) ? "openmp" : "serial"); }
}

static void BM_GridSearch(benchmark::State &state)
{
    const auto set = partition_stride(sample_twdp({10.0, 0.9, 1.0}, 100000, 1).envelopes(), 10);
    const double omega = estimate_omega(set);
    GridConfig grid;
    grid.k_max = 100.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(ml_fit(set, omega, grid, mode(state)));
    set_label(state);
}
BENCHMARK(BM_GridSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SampleTwdp(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_twdp({10.0, 0.9, 1.0}, 1000000, 2, mode(state)));
    set_label(state);
}
BENCHMARK(BM_SampleTwdp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_AverageCorr(benchmark::State &state)
{
    PlaneWaveScene s;
    s.waves = {PlaneWave{1.0, {1.0, 0.0, 0.0}, 0.0, 5e-9}};
    for (int k = 0; k < 101; ++k)
        s.grid.freq_hz.push_back(59e9 + 20e6 * k);
    const auto grid = synth_field(s);
    for (auto _ : state)
        benchmark::DoNotOptimize(average_corr(grid, 20, mode(state)));
    set_label(state);
}
BENCHMARK(BM_AverageCorr)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Ber(benchmark::State &state)
{
    const std::vector<double> snr = {0.0, 10.0, 20.0, 30.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_ber({10.0, 1.0, 1.0}, snr, 200000, 3, mode(state)));
    set_label(state);
}
BENCHMARK(BM_Ber)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
