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

#include "twdp/inference.hpp"
#include "twdp/errors.hpp"
#include "twdp/likelihood.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twdp
{
    void EnvelopeSet::validate() const
    {
        if (labels.size() != values.size())
            throw std::domain_error("EnvelopeSet: one partition label per value required");
        for (double v : values)
            if (!std::isfinite(v) || v < 0.0)
                throw std::domain_error("EnvelopeSet: envelope values must be finite and nonnegative");
    }

    static std::vector<double> select(const EnvelopeSet &set, Partition p)
    {
        std::vector<double> out;
        out.reserve(set.count(p));
        for (std::size_t i = 0; i < set.values.size(); ++i)
            if (set.labels[i] == p)
                out.push_back(set.values[i]);
        return out;
    }

    std::vector<double> EnvelopeSet::fit_values() const { return select(*this, Partition::fit); }
    std::vector<double> EnvelopeSet::moment_values() const { return select(*this, Partition::moment); }

    std::size_t EnvelopeSet::count(Partition p) const
    {
        return (std::size_t)std::count(labels.begin(), labels.end(), p);
    }

    EnvelopeSet partition_stride(std::span<const double> values, std::size_t stride)
    {
        if (stride < 2)
            throw std::domain_error("partition_stride: stride must be at least 2 so both classes are nonempty");
        if (values.size() < 2 * stride)
            throw std::domain_error("partition_stride: at least 2 * stride samples required");
        EnvelopeSet set;
        set.values.assign(values.begin(), values.end());
        set.labels.resize(values.size(), Partition::moment);
        for (std::size_t i = stride - 1; i < values.size(); i += stride)
            set.labels[i] = Partition::fit;
        set.validate();
        return set;
    }

    std::vector<Partition> partition_chequerboard(std::size_t nx, std::size_t ny, std::size_t nz)
    {
        if (nx == 0 || ny == 0 || nz == 0)
            throw std::domain_error("partition_chequerboard: grid dimensions must be at least 1");
        std::vector<Partition> labels(nx * ny * nz);
        for (std::size_t iz = 0; iz < nz; ++iz)
            for (std::size_t iy = 0; iy < ny; ++iy)
                for (std::size_t ix = 0; ix < nx; ++ix)
                    labels[ix + nx * (iy + ny * iz)] = ((ix + iy + iz) % 2 == 0) ? Partition::fit : Partition::moment;
        return labels;
    }

    double estimate_omega(const EnvelopeSet &set)
    {
        set.validate();
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < set.values.size(); ++i)
            if (set.labels[i] == Partition::moment)
            {
                sum += set.values[i] * set.values[i];
                ++n;
            }
        if (n == 0)
            throw std::domain_error("estimate_omega: moment class is empty");
        double omega = sum / double(n);
        if (!(omega > 0.0))
            throw estimation_error("estimate_omega: all moment-class envelopes are zero");
        return omega;
    }

    // ---------------------------------------------------------------------------------------

    void GridConfig::validate() const
    {
        if (!(k_step > 0.0) || !(delta_step > 0.0) || !std::isfinite(k_step) || !std::isfinite(delta_step))
            throw std::domain_error("GridConfig: steps must be positive");
        if (!(k_min >= 0.0) || !(k_max > k_min))
            throw std::domain_error("GridConfig: 0 <= k_min < k_max required");
        if (k_max > max_supported_k)
            throw std::domain_error("GridConfig: k_max exceeds the supported range");
        if (delta_step > 1.0)
            throw std::domain_error("GridConfig: delta_step must not exceed 1");
    }

    std::size_t GridConfig::k_count() const
    {
        return (std::size_t)std::floor((k_max - k_min) / k_step + 1e-9) + 1;
    }

    std::size_t GridConfig::delta_count() const
    {
        return (std::size_t)std::floor(1.0 / delta_step + 1e-9) + 1;
    }

    double GridConfig::delta_at(std::size_t j) const
    {
        return std::min(1.0, double(j) * delta_step);
    }

    // ---------------------------------------------------------------------------------------

    static std::vector<double> normalized_fit_values(const EnvelopeSet &set, double omega_hat)
    {
        set.validate();
        if (!(omega_hat > 0.0) || !std::isfinite(omega_hat))
            throw std::domain_error("ml_fit: omega_hat must be positive and finite");
        std::vector<double> x = set.fit_values();
        if (x.empty())
            throw std::domain_error("ml_fit: fit class is empty");
        const double inv = 1.0 / std::sqrt(omega_hat);
        for (double &v : x)
            v *= inv;
        return x;
    }

    MlFit ml_fit(const EnvelopeSet &set, double omega_hat, const GridConfig &grid, Execution exec)
    {
        std::vector<PreparedSample> prepared;
        prepared.emplace_back(normalized_fit_values(set, omega_hat));
        return grid_search(prepared, grid, exec).front();
    }

    std::vector<MlFit> ml_fit_batch(std::span<const EnvelopeSet> sets, std::span<const double> omega_hats,
                                    const GridConfig &grid, Execution exec)
    {
        if (sets.size() != omega_hats.size())
            throw std::domain_error("ml_fit_batch: one omega estimate per set required");
        std::vector<PreparedSample> prepared;
        prepared.reserve(sets.size());
        for (std::size_t i = 0; i < sets.size(); ++i)
            prepared.emplace_back(normalized_fit_values(sets[i], omega_hats[i]));
        return grid_search(prepared, grid, exec);
    }

    // ---------------------------------------------------------------------------------------

    double aicc(double loglik, int model_order, std::size_t n)
    {
        if (model_order < 1)
            throw std::domain_error("aicc: model order must be positive");
        const double u = double(model_order);
        if (double(n) <= u + 1.0)
            throw std::domain_error("aicc: sample size must exceed model order + 1");
        return -2.0 * loglik + 2.0 * u + 2.0 * u * (u + 1.0) / (double(n) - u - 1.0);
    }

    const char *to_string(Model m)
    {
        return m == Model::twdp ? "twdp" : "rice";
    }

    Model select_model(double aicc_rice, double aicc_twdp)
    {
        return aicc_twdp < aicc_rice ? Model::twdp : Model::rice;
    }

    double g_statistic(std::span<const double> observed, std::span<const double> expected)
    {
        if (observed.size() != expected.size() || observed.empty())
            throw std::domain_error("g_statistic: observed and expected counts must match in size");
        double g = 0.0;
        for (std::size_t i = 0; i < observed.size(); ++i)
        {
            if (!(observed[i] >= 0.0))
                throw std::domain_error("g_statistic: observed counts must be nonnegative");
            if (!(expected[i] > 0.0) || !std::isfinite(expected[i]))
                throw numerical_error("g_statistic: expected count " + std::to_string(i) + " is not positive");
            if (observed[i] > 0.0)
                g += observed[i] * std::log(observed[i] / expected[i]);
        }
        return 2.0 * g;
    }

    double chi2_quantile(double p, double dof)
    {
        if (!(p > 0.0 && p < 1.0))
            throw std::domain_error("chi2_quantile: p must lie in (0, 1)");
        if (!(dof > 0.0) || !std::isfinite(dof))
            throw std::domain_error("chi2_quantile: degrees of freedom must be positive");
        boost::math::chi_squared dist(dof);
        return boost::math::quantile(dist, p);
    }

    GTestResult g_test(std::span<const double> fit_values, Model model, const FadingParams &params, double alpha,
                       std::size_t per_cell, int phase_nodes)
    {
        params.validate();
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::domain_error("g_test: alpha must lie in (0, 1)");
        if (per_cell == 0)
            throw std::domain_error("g_test: per_cell must be positive");
        const int e = model == Model::rice ? 2 : 3;
        const std::size_t n = fit_values.size();
        if (n < per_cell * std::size_t(e + 2))
            throw std::domain_error("g_test: at least per_cell * (e + 2) fit samples required");

        std::vector<double> x(fit_values.begin(), fit_values.end());
        for (double v : x)
            if (!std::isfinite(v) || v < 0.0)
                throw std::domain_error("g_test: envelope values must be finite and nonnegative");
        std::sort(x.begin(), x.end());

        const std::size_t m = n / per_cell;
        GTestResult res;
        res.alpha = alpha;
        res.dof = int(m) - e;
        res.cell_edges.resize(m - 1);
        res.observed.assign(m, double(per_cell));
        res.observed.back() += double(n % per_cell);
        for (std::size_t c = 1; c < m; ++c)
            res.cell_edges[c - 1] = 0.5 * (x[c * per_cell - 1] + x[c * per_cell]);

        std::vector<double> cdf(m + 1);
        cdf.front() = 0.0;
        cdf.back() = 1.0;
        const long n_edges = (long)(m - 1);
#pragma omp parallel for schedule(dynamic, 4)
        for (long c = 0; c < n_edges; ++c)
        {
            double r = res.cell_edges[(std::size_t)c];
            cdf[(std::size_t)c + 1] = model == Model::rice ? rice_cdf(r, params.k, params.omega)
                                                           : twdp_cdf(r, params, phase_nodes);
        }

        res.expected.resize(m);
        for (std::size_t c = 0; c < m; ++c)
        {
            double ec = double(n) * (cdf[c + 1] - cdf[c]);
            if (!(ec > 0.0) || !std::isfinite(ec))
                throw numerical_error("g_test: expected count of cell " + std::to_string(c) + " is not positive");
            res.expected[c] = ec;
        }

        res.g = g_statistic(res.observed, res.expected);
        res.threshold = chi2_quantile(1.0 - alpha, double(res.dof));
        res.rejected = res.g > res.threshold;
        return res;
    }

    // ---------------------------------------------------------------------------------------

    FadingParams FitReport::chosen_params() const
    {
        if (chosen == Model::twdp)
            return {twdp.k, twdp.delta, omega_hat};
        return {rice.k, 0.0, omega_hat};
    }

    static FitReport finish_report(const EnvelopeSet &set, double omega_hat, const MlFit &fit,
                                   const AnalysisConfig &config)
    {
        FitReport rep;
        rep.omega_hat = omega_hat;
        rep.n_fit = set.count(Partition::fit);
        rep.n_moment = set.count(Partition::moment);

        rep.rice.k = fit.rice.k;
        rep.rice.loglik = fit.rice.loglik;
        rep.rice.k_at_boundary = fit.rice.k_at_boundary;
        rep.rice.aicc = aicc(fit.rice.loglik, 1, rep.n_fit);

        rep.twdp.k = fit.twdp.k;
        rep.twdp.delta = fit.twdp.delta;
        rep.twdp.loglik = fit.twdp.loglik;
        rep.twdp.k_at_boundary = fit.twdp.k_at_boundary;
        rep.twdp.aicc = aicc(fit.twdp.loglik, 2, rep.n_fit);

        rep.chosen = select_model(rep.rice.aicc, rep.twdp.aicc);
        rep.gtest = g_test(set.fit_values(), rep.chosen, rep.chosen_params(), config.alpha, config.per_cell,
                           config.phase_nodes);
        return rep;
    }

    FitReport analyze(const EnvelopeSet &set, const AnalysisConfig &config)
    {
        const double omega_hat = estimate_omega(set);
        MlFit fit = ml_fit(set, omega_hat, config.grid, config.exec);
        return finish_report(set, omega_hat, fit, config);
    }

    std::vector<FitReport> analyze_batch(std::span<const EnvelopeSet> sets, const AnalysisConfig &config)
    {
        std::vector<double> omegas;
        omegas.reserve(sets.size());
        for (const auto &s : sets)
            omegas.push_back(estimate_omega(s));
        std::vector<MlFit> fits = ml_fit_batch(sets, omegas, config.grid, config.exec);
        std::vector<FitReport> out;
        out.reserve(sets.size());
        for (std::size_t i = 0; i < sets.size(); ++i)
            out.push_back(finish_report(sets[i], omegas[i], fits[i], config));
        return out;
    }
}
