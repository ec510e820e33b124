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

#include "twdp/likelihood.hpp"
#include "twdp/errors.hpp"
#include "twdp/fading.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace twdp
{
    namespace
    {
        constexpr double h = lattice_step;
        constexpr long reach = 120; // Kernel half-width in lattice steps (15 sigma)
        constexpr long width = 2 * reach + 1;
        constexpr double neg_inf = -std::numeric_limits<double>::infinity();

        // Lattice interval [j h, (j + 1) h) containing u = x * scale
        long bin_of(double x, double scale)
        {
            return (long)std::floor(x * scale / h);
        }

        // Phase nodes with weights summing to one. The integrand is even in the phase, so only
        // nodes on [0, pi] are kept, the interior ones with double weight.
        void phase_nodes(double k, double delta, std::vector<double> &v, std::vector<double> &w)
        {
            v.clear();
            w.clear();
            if (k == 0.0 || delta == 0.0)
            {
                v.push_back(std::sqrt(2.0 * k));
                w.push_back(1.0);
                return;
            }
            // Node spacing of at most ~0.35 / (sqrt(K) delta) in phase keeps the spacing in v well
            // below the unit width of the kernel, where the trapezoid rule is exponentially accurate.
            double spread = std::sqrt(k) * delta + 1.0;
            long n = 2 * (long)std::ceil(std::numbers::pi * spread / 0.35);
            n = std::clamp(n, 16L, 4096L);
            long half = n / 2;
            for (long i = 0; i <= half; ++i)
            {
                double a = 2.0 * std::numbers::pi * double(i) / double(n);
                double arg = std::max(0.0, 1.0 + delta * std::cos(a));
                v.push_back(std::sqrt(2.0 * k * arg));
                w.push_back((i == 0 || i == half) ? 1.0 / double(n) : 2.0 / double(n));
            }
        }

        // 8-point Lagrange weights for p in [3, 4) relative to the first stencil point
        std::array<double, 8> lagrange8(double t)
        {
            static constexpr std::array<double, 8> denom = {-5040.0, 720.0, -240.0, 144.0,
                                                            -144.0, 240.0, -720.0, 5040.0};
            std::array<double, 8> pre{}, suf{}, w{};
            pre[0] = 1.0;
            for (int l = 1; l < 8; ++l)
                pre[l] = pre[l - 1] * (t - double(l - 1));
            suf[7] = 1.0;
            for (int l = 6; l >= 0; --l)
                suf[l] = suf[l + 1] * (t - double(l + 1));
            for (int l = 0; l < 8; ++l)
                w[l] = pre[l] * suf[l] / denom[l];
            return w;
        }

        struct Cell
        {
            double ll = neg_inf;
            long ik = -1;
            long id = -1;
        };

        // Higher likelihood wins; equal likelihoods go to the smaller (K, delta) index
        bool better(const Cell &a, const Cell &b)
        {
            if (a.ll != b.ll)
                return a.ll > b.ll;
            return a.ik < b.ik || (a.ik == b.ik && a.id < b.id);
        }

        struct RowScratch
        {
            std::vector<std::vector<double>> logg; // Per delta
            std::vector<long> lo, hi;              // Per delta, lo > hi if empty
            std::vector<double> c;
            std::vector<long> need_lo, need_hi; // Per sample
        };

        // sum_j c_j ln g_j with the mirror ln g_{-1} = ln g_1; -inf if a used value is -inf
        double weighted_sum(long first, const std::vector<double> &c, const std::vector<double> &logg, long lo)
        {
            double acc = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i)
            {
                if (c[i] == 0.0)
                    continue;
                long j = first + (long)i;
                double l = logg[(std::size_t)(std::abs(j) - lo)];
                if (l == neg_inf)
                    return neg_inf;
                acc += c[i] * l;
            }
            return acc;
        }

        // Lattice range needed by a sample at a given scale, mirror point included
        void needed_range(const PreparedSample &s, double scale, long &lo, long &hi)
        {
            lo = std::max(bin_of(s.min(), scale) - 1, 0L);
            hi = bin_of(s.max(), scale) + 2;
        }

        void evaluate_row(long ik, std::span<const PreparedSample> samples, const DensityTable &table,
                          const GridConfig &grid, RowScratch &sc, std::vector<Cell> &rice, std::vector<Cell> &twdp)
        {
            const long nd = (long)grid.delta_count();
            const double k = grid.k_at((std::size_t)ik);
            const double scale = std::sqrt(2.0 * (1.0 + k));

            long u_lo = std::numeric_limits<long>::max(), u_hi = 0;
            sc.need_lo.resize(samples.size());
            sc.need_hi.resize(samples.size());
            for (std::size_t s = 0; s < samples.size(); ++s)
            {
                needed_range(samples[s], scale, sc.need_lo[s], sc.need_hi[s]);
                u_lo = std::min(u_lo, sc.need_lo[s]);
                u_hi = std::max(u_hi, sc.need_hi[s]);
            }

            sc.logg.resize((std::size_t)nd);
            sc.lo.resize((std::size_t)nd);
            sc.hi.resize((std::size_t)nd);
            for (long id = 0; id < nd; ++id)
            {
                long blo, bhi;
                table.band(k, grid.delta_at((std::size_t)id), blo, bhi);
                long lo = std::max(u_lo, blo), hi = std::min(u_hi, bhi);
                sc.lo[(std::size_t)id] = lo;
                sc.hi[(std::size_t)id] = hi;
                if (lo <= hi)
                    table.log_density(k, grid.delta_at((std::size_t)id), lo, hi, sc.logg[(std::size_t)id]);
            }

            for (std::size_t s = 0; s < samples.size(); ++s)
            {
                bool any = false;
                for (long id = 0; id < nd && !any; ++id)
                    any = sc.need_lo[s] >= sc.lo[(std::size_t)id] && sc.need_hi[s] <= sc.hi[(std::size_t)id];
                if (!any)
                    continue;

                long first;
                samples[s].interpolation_weights(scale, first, sc.c);
                const double base = samples[s].sum_log() + 2.0 * double(samples[s].size()) * std::log(scale);

                for (long id = 0; id < nd; ++id)
                {
                    const std::size_t d = (std::size_t)id;
                    if (sc.need_lo[s] < sc.lo[d] || sc.need_hi[s] > sc.hi[d])
                        continue;
                    double ll = base + weighted_sum(first, sc.c, sc.logg[d], sc.lo[d]);
                    if (!std::isfinite(ll))
                        continue;
                    Cell cell{ll, ik, id};
                    if (better(cell, twdp[s]))
                        twdp[s] = cell;
                    if (id == 0 && better(cell, rice[s]))
                        rice[s] = cell;
                }
            }
        }
    }

    // ---------------------------------------------------------------------------------------

    PreparedSample::PreparedSample(std::span<const double> normalized)
    {
        if (normalized.empty())
            throw std::domain_error("PreparedSample: empty sample");
        x_.assign(normalized.begin(), normalized.end());
        for (double v : x_)
            if (!std::isfinite(v) || v < 0.0)
                throw std::domain_error("PreparedSample: values must be finite and nonnegative");
        std::sort(x_.begin(), x_.end());

        p1_.resize(x_.size() + 1);
        p2_.resize(x_.size() + 1);
        p3_.resize(x_.size() + 1);
        p1_[0] = p2_[0] = p3_[0] = 0.0L;
        long double sl = 0.0L;
        for (std::size_t i = 0; i < x_.size(); ++i)
        {
            long double v = x_[i];
            p1_[i + 1] = p1_[i] + v;
            p2_[i + 1] = p2_[i] + v * v;
            p3_[i + 1] = p3_[i] + v * v * v;
            sl += std::log(v);
        }
        sum_log_ = (double)sl;
    }

    void PreparedSample::interpolation_weights(double scale, long &first, std::vector<double> &c) const
    {
        const long j_lo = bin_of(x_.front(), scale);
        const long j_hi = bin_of(x_.back(), scale);
        const long nb = j_hi - j_lo + 1;
        first = j_lo - 1;
        c.assign((std::size_t)(nb + 3), 0.0);

        // Cubic Lagrange weights on j - 1 .. j + 2 for t = u / h - j in [0, 1), summed over the
        // bin through the moments S_k = sum t^k
        auto deposit = [&](long j, double cnt, double s1, double s2, double s3)
        {
            double *cj = &c[(std::size_t)(j - first)];
            cj[-1] -= (s3 - 3.0 * s2 + 2.0 * s1) / 6.0;
            cj[0] += 0.5 * (s3 - 2.0 * s2 - s1 + 2.0 * cnt);
            cj[1] -= 0.5 * (s3 - s2 - 2.0 * s1);
            cj[2] += (s3 - s1) / 6.0;
        };

        if ((long)x_.size() <= 4 * nb)
        {
            for (double x : x_)
            {
                long j = bin_of(x, scale);
                double t = x * scale / h - double(j);
                deposit(j, 1.0, t, t * t, t * t * t);
            }
            return;
        }

        // Bin moments from prefix sums, taken about the left bin edge to limit cancellation
        const long double q = (long double)scale / h;
        auto begin = x_.begin();
        std::size_t idx = 0;
        for (long j = j_lo; j <= j_hi; ++j)
        {
            std::size_t end = x_.size();
            if (j < j_hi)
            {
                double edge = double(j + 1) * h / scale;
                end = (std::size_t)(std::lower_bound(begin + (long)idx, x_.end(), edge) - begin);
            }
            if (end == idx)
                continue;
            long double cnt = (long double)(end - idx);
            long double s1 = p1_[end] - p1_[idx];
            long double s2 = p2_[end] - p2_[idx];
            long double s3 = p3_[end] - p3_[idx];
            long double xc = (long double)j / q;
            long double d1 = s1 - cnt * xc;
            long double d2 = s2 - 2.0L * xc * s1 + cnt * xc * xc;
            long double d3 = s3 - 3.0L * xc * s2 + 3.0L * xc * xc * s1 - cnt * xc * xc * xc;
            deposit(j, (double)cnt, (double)(d1 * q), (double)(d2 * q * q), (double)(d3 * q * q * q));
            idx = end;
        }
    }

    // ---------------------------------------------------------------------------------------

    DensityTable::DensityTable(double v_max)
    {
        if (!std::isfinite(v_max) || v_max < 0.0)
            throw std::domain_error("DensityTable: v_max must be finite and nonnegative");
        rows_ = (long)std::ceil((v_max + band_reach) / h) + 4;
        table_.resize((std::size_t)(rows_ * width));
        for (long j = 0; j < rows_; ++j)
        {
            double u = double(j) * h;
            double *row = &table_[(std::size_t)(j * width)];
            for (long d = -reach; d <= reach; ++d)
            {
                double v = double(std::abs(j + d)) * h;
                double e = u - v;
                row[d + reach] = std::exp(-0.5 * e * e) * bessel_i0e(u * v);
            }
        }
    }

    void DensityTable::band(double k, double delta, long &lo, long &hi) const
    {
        double v_lo = std::sqrt(2.0 * k * std::max(0.0, 1.0 - delta));
        double v_hi = std::sqrt(2.0 * k * (1.0 + delta));
        lo = std::max(0L, (long)std::floor((v_lo - band_reach) / h));
        hi = (long)std::ceil((v_hi + band_reach) / h);
        if (hi >= rows_)
            throw std::domain_error("DensityTable: cell outside the tabulated range");
    }

    void DensityTable::log_density(double k, double delta, long lo, long hi, std::vector<double> &out) const
    {
        thread_local std::vector<double> nv, nw, weights;

        phase_nodes(k, delta, nv, nw);
        double v_lo = nv.front(), v_hi = nv.front();
        for (double v : nv)
        {
            v_lo = std::min(v_lo, v);
            v_hi = std::max(v_hi, v);
        }
        const long m_min = (long)std::floor(v_lo / h) - 3;
        const long m_max = (long)std::floor(v_hi / h) + 4;
        weights.assign((std::size_t)(m_max - m_min + 1), 0.0);

        for (std::size_t i = 0; i < nv.size(); ++i)
        {
            double p = nv[i] / h;
            long m0 = (long)std::floor(p) - 3;
            auto lw = lagrange8(p - double(m0));
            double *dst = &weights[(std::size_t)(m0 - m_min)];
            for (int l = 0; l < 8; ++l)
                dst[l] += nw[i] * lw[(std::size_t)l];
        }

        out.resize((std::size_t)(hi - lo + 1));
        for (long j = lo; j <= hi; ++j)
        {
            const long a = std::max(m_min, j - reach), b = std::min(m_max, j + reach);
            double g = 0.0;
            if (a <= b)
            {
                const double *row = &table_[(std::size_t)(j * width + reach + (a - j))];
                const double *wt = &weights[(std::size_t)(a - m_min)];
                for (long q = 0; q <= b - a; ++q)
                    g += wt[q] * row[q];
            }
            out[(std::size_t)(j - lo)] = g > 0.0 ? std::log(g) : neg_inf;
        }
    }

    // ---------------------------------------------------------------------------------------

    double table_loglik(const PreparedSample &sample, const DensityTable &table, double k, double delta)
    {
        const double scale = std::sqrt(2.0 * (1.0 + k));
        long need_lo, need_hi, blo, bhi;
        needed_range(sample, scale, need_lo, need_hi);
        table.band(k, delta, blo, bhi);
        if (need_lo < blo || need_hi > bhi)
            return neg_inf;

        std::vector<double> logg, c;
        table.log_density(k, delta, need_lo, need_hi, logg);
        long first;
        sample.interpolation_weights(scale, first, c);
        double ll = sample.sum_log() + 2.0 * double(sample.size()) * std::log(scale) +
                    weighted_sum(first, c, logg, need_lo);
        return std::isfinite(ll) ? ll : neg_inf;
    }

    std::vector<MlFit> grid_search(std::span<const PreparedSample> samples, const GridConfig &grid, Execution exec)
    {
        grid.validate();
        if (samples.empty())
            return {};

        const long nk = (long)grid.k_count();
        const double k_last = grid.k_at((std::size_t)(nk - 1));
        const DensityTable table(std::sqrt(4.0 * k_last));

        const std::size_t ns = samples.size();
        std::vector<Cell> rice(ns), twdp(ns);

        if (exec == Execution::serial)
        {
            RowScratch sc;
            for (long ik = 0; ik < nk; ++ik)
                evaluate_row(ik, samples, table, grid, sc, rice, twdp);
        }
        else
        {
#pragma omp parallel
            {
                RowScratch sc;
                std::vector<Cell> rice_t(ns), twdp_t(ns);
#pragma omp for schedule(dynamic, 8) nowait
                for (long ik = 0; ik < nk; ++ik)
                    evaluate_row(ik, samples, table, grid, sc, rice_t, twdp_t);
#pragma omp critical(twdp_grid_merge)
                for (std::size_t s = 0; s < ns; ++s)
                {
                    if (better(rice_t[s], rice[s]))
                        rice[s] = rice_t[s];
                    if (better(twdp_t[s], twdp[s]))
                        twdp[s] = twdp_t[s];
                }
            }
        }

        std::vector<MlFit> out(ns);
        for (std::size_t s = 0; s < ns; ++s)
        {
            if (rice[s].ik < 0 || twdp[s].ik < 0)
                throw estimation_error("ml_fit: no grid cell assigns positive density to every fit sample");
            auto at_boundary = [&](long ik)
            { return ik == nk - 1 || (ik == 0 && grid.k_min > 0.0); };

            MlFit &f = out[s];
            f.n = samples[s].size();
            f.rice.k = grid.k_at((std::size_t)rice[s].ik);
            f.rice.loglik = rice[s].ll;
            f.rice.k_at_boundary = at_boundary(rice[s].ik);
            f.twdp.k = grid.k_at((std::size_t)twdp[s].ik);
            f.twdp.delta = grid.delta_at((std::size_t)twdp[s].id);
            f.twdp.loglik = twdp[s].ll;
            f.twdp.k_at_boundary = at_boundary(twdp[s].ik);
        }
        return out;
    }
}
