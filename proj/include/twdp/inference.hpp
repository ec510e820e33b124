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

#ifndef twdp_inference_H
#define twdp_inference_H

#include "twdp/execution.hpp"
#include "twdp/fading.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace twdp
{
    enum class Partition : unsigned char
    {
        moment, // Used for the second-moment estimate
        fit     // Used for the (K, delta) fit and the goodness-of-fit test
    };

    // Envelope samples with a partition label per sample
    struct EnvelopeSet
    {
        std::vector<double> values;
        std::vector<Partition> labels;

        // Finite nonnegative values, one label per value
        void validate() const;

        std::vector<double> fit_values() const;
        std::vector<double> moment_values() const;
        std::size_t count(Partition p) const;
    };

    // Every stride-th sample (indices stride-1, 2 stride-1, ...) is labelled fit, the rest moment
    EnvelopeSet partition_stride(std::span<const double> values, std::size_t stride = 10);

    // 3D chequerboard labels in x-fastest order: fit where ix + iy + iz is even
    std::vector<Partition> partition_chequerboard(std::size_t nx, std::size_t ny, std::size_t nz);

    // Mean squared envelope over the moment class
    double estimate_omega(const EnvelopeSet &set);

    // Discretisation of the (K, delta) search space. K is linear.
    struct GridConfig
    {
        double k_min = 0.0;
        double k_max = 1000.0;
        double k_step = 0.05;
        double delta_step = 0.05;

        void validate() const;
        std::size_t k_count() const;
        std::size_t delta_count() const;
        double k_at(std::size_t i) const { return k_min + double(i) * k_step; }
        double delta_at(std::size_t j) const;
    };

    struct RiceFit
    {
        double k = 0.0;
        double loglik = 0.0;
        bool k_at_boundary = false;
    };

    struct TwdpFit
    {
        double k = 0.0;
        double delta = 0.0;
        double loglik = 0.0;
        bool k_at_boundary = false;
    };

    struct MlFit
    {
        RiceFit rice;
        TwdpFit twdp;
        std::size_t n = 0; // Fit-class size
    };

    // Grid-search maximum likelihood over the fit class of `set`, with envelopes normalised by
    // sqrt(omega_hat). Log-likelihoods refer to the normalised envelopes. Ties resolve to the
    // smallest K, then the smallest delta.
    // Throws estimation_error if no grid cell assigns positive density to every fit sample.
    MlFit ml_fit(const EnvelopeSet &set, double omega_hat, const GridConfig &grid = {},
                 Execution exec = Execution::parallel);

    // Same as ml_fit for many sets sharing one density table
    std::vector<MlFit> ml_fit_batch(std::span<const EnvelopeSet> sets, std::span<const double> omega_hats,
                                    const GridConfig &grid = {}, Execution exec = Execution::parallel);

    // Sample-size corrected Akaike criterion  -2 ln L + 2U + 2U(U+1)/(n-U-1)
    double aicc(double loglik, int model_order, std::size_t n);

    enum class Model
    {
        rice,
        twdp
    };

    const char *to_string(Model m);

    // TWDP only when its AICc is strictly lower
    Model select_model(double aicc_rice, double aicc_twdp);

    // G = 2 sum O_i ln(O_i / E_i); cells with O_i = 0 contribute nothing
    double g_statistic(std::span<const double> observed, std::span<const double> expected);

    // Quantile of the chi-square distribution
    double chi2_quantile(double p, double dof);

    struct GTestResult
    {
        double g = 0.0;
        int dof = 0;
        double alpha = 0.01;
        double threshold = 0.0;
        bool rejected = false;
        std::vector<double> cell_edges; // Interior edges in envelope units, ascending
        std::vector<double> observed;
        std::vector<double> expected;
    };

    // Goodness-of-fit test of `model` with `params` on the fit envelopes. Cells hold per_cell
    // consecutive sorted observations each, the last cell absorbs the remainder; interior
    // edges lie midway between neighbouring observations. Degrees of freedom are
    // cells - e with e = 2 (Rice) or 3 (TWDP).
    GTestResult g_test(std::span<const double> fit_values, Model model, const FadingParams &params, double alpha = 0.01,
                       std::size_t per_cell = 10, int phase_nodes = default_phase_nodes);

    struct ModelFit
    {
        double k = 0.0;
        double delta = 0.0;
        double loglik = 0.0;
        double aicc = 0.0;
        bool k_at_boundary = false;
    };

    struct FitReport
    {
        double omega_hat = 0.0;
        ModelFit rice;
        ModelFit twdp;
        Model chosen = Model::rice;
        GTestResult gtest;
        std::size_t n_fit = 0;
        std::size_t n_moment = 0;

        // Parameters of the chosen model in envelope units
        FadingParams chosen_params() const;
    };

    struct AnalysisConfig
    {
        GridConfig grid;
        double alpha = 0.01;
        std::size_t per_cell = 10;
        int phase_nodes = default_phase_nodes;
        Execution exec = Execution::parallel;
    };

    // estimate_omega -> ml_fit -> aicc -> select_model -> g_test
    FitReport analyze(const EnvelopeSet &set, const AnalysisConfig &config = {});

    // analyze() for many sets; the grid search is shared
    std::vector<FitReport> analyze_batch(std::span<const EnvelopeSet> sets, const AnalysisConfig &config = {});
}

#endif
