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

#ifndef twdp_likelihood_H
#define twdp_likelihood_H

// Tabulated TWDP log-likelihood used by the grid-search estimator.
//
// For envelopes normalised to unit second moment, u = r / sigma = r sqrt(2 (1 + K)) and the
// TWDP density is the phase average of conditional Rice densities,
//   f(r) = (u / sigma) g(u),   g(u) = 1/(2 pi) int P(u; v(a)) da,
//   P(u; v) = exp(-(u - v)^2 / 2) I0e(u v),   v(a) = sqrt(2 K (1 + delta cos a)).
// P is tabulated once on a square lattice of step h in (u, v). For a grid cell the phase
// nodes are spread onto the v-lattice with 8-point Lagrange weights, g follows from a banded
// matrix-vector product and ln g is interpolated cubically between lattice points.
// Data enter only through per-bin moments, so the cost per cell does not depend on the
// sample size.

#include "twdp/execution.hpp"
#include "twdp/inference.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace twdp
{
    // Lattice step of the density table in units of sigma
    inline constexpr double lattice_step = 0.125;

    // Cells are evaluated for envelopes with |u - v| <= band_reach for some phase; data
    // outside that band are treated as having zero likelihood in that cell.
    inline constexpr double band_reach = 14.0;

    // One dataset in normalised units, sorted, with the sums needed for binning
    class PreparedSample
    {
    public:
        explicit PreparedSample(std::span<const double> normalized);

        std::size_t size() const { return x_.size(); }
        double min() const { return x_.front(); }
        double max() const { return x_.back(); }
        double sum_log() const { return sum_log_; }

        // Cubic-interpolation weights c_j (j = first .. first + c.size() - 1) such that
        // sum_n ln g(u_n) = sum_j c_j ln g(j h) for u_n = scale x_n
        void interpolation_weights(double scale, long &first, std::vector<double> &c) const;

    private:
        std::vector<double> x_;
        std::vector<long double> p1_, p2_, p3_; // Prefix sums of x, x^2 and x^3
        double sum_log_ = 0.0;
    };

    // Lattice of P(u; v) and the per-cell evaluation of ln g
    class DensityTable
    {
    public:
        // Covers every cell with sqrt(2 K (1 + delta)) <= v_max
        explicit DensityTable(double v_max);

        // Lattice index range [lo, hi] of u outside of which the cell is not evaluated
        void band(double k, double delta, long &lo, long &hi) const;

        // ln g(j h) for j = lo .. hi, which must lie inside band(k, delta)
        void log_density(double k, double delta, long lo, long hi, std::vector<double> &out) const;

        long rows() const { return rows_; }

    private:
        long rows_ = 0;
        std::vector<double> table_; // rows_ x (2 reach + 1), entry (j, d) = P(j h, |j + d| h)
    };

    // Normalised log-likelihood of one cell via the table; -inf if the data leave the band
    double table_loglik(const PreparedSample &sample, const DensityTable &table, double k, double delta);

    // Grid search shared by ml_fit and ml_fit_batch on normalised datasets. The serial and the
    // OpenMP paths evaluate identical arithmetic per cell and return bit-identical results.
    std::vector<MlFit> grid_search(std::span<const PreparedSample> samples, const GridConfig &grid, Execution exec);
}

#endif
