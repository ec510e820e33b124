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

#include "twdp/measurement.hpp"
#include "twdp/errors.hpp"

#include <armadillo>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twdp
{
    // ---------------------------------------------------------------------------------------
    // Directional scans

    double ScanRecord::mean_power() const
    {
        if (samples.empty())
            throw std::domain_error("ScanRecord: no samples");
        double sum = 0.0;
        for (const auto &s : samples)
            sum += std::norm(s);
        return sum / double(samples.size());
    }

    void DirectionalScan::validate() const
    {
        for (std::size_t i = 0; i < records.size(); ++i)
        {
            const auto &r = records[i];
            const std::string where = "DirectionalScan: direction " + std::to_string(i) + ": ";
            if (!(r.azimuth_deg >= 0.0 && r.azimuth_deg < 360.0))
                throw std::domain_error(where + "azimuth outside [0, 360)");
            if (!(r.elevation_deg >= 0.0 && r.elevation_deg <= 180.0))
                throw std::domain_error(where + "elevation outside [0, 180]");
            if (!std::isfinite(r.noise_power) || !(r.noise_power > 0.0))
                throw std::domain_error(where + "missing or non-positive noise power estimate");
            if (r.samples.empty())
                throw std::domain_error(where + "no samples");
            for (const auto &s : r.samples)
                if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
                    throw std::domain_error(where + "non-finite sample");
        }
    }

    std::vector<bool> noise_mask(const DirectionalScan &scan, double margin_db)
    {
        if (!std::isfinite(margin_db))
            throw std::domain_error("noise_mask: margin must be finite");
        scan.validate();
        const double factor = std::pow(10.0, margin_db / 10.0);
        std::vector<bool> mask(scan.records.size());
        for (std::size_t i = 0; i < mask.size(); ++i)
            mask[i] = scan.records[i].mean_power() >= scan.records[i].noise_power * factor;
        return mask;
    }

    PowerMap power_map(const DirectionalScan &scan, double margin_db)
    {
        if (scan.records.empty())
            throw std::domain_error("power_map: empty scan");
        PowerMap map;
        map.evaluated = noise_mask(scan, margin_db);
        map.normalized.resize(scan.records.size());
        double peak = 0.0;
        for (std::size_t i = 0; i < scan.records.size(); ++i)
        {
            map.normalized[i] = scan.records[i].mean_power();
            if (map.evaluated[i])
                peak = std::max(peak, map.normalized[i]);
        }
        if (!(peak > 0.0))
            throw std::domain_error("power_map: no direction lies above the noise floor");
        for (double &v : map.normalized)
            v /= peak;
        return map;
    }

    // ---------------------------------------------------------------------------------------
    // Spatial correlation

    std::vector<double> CorrelationMap::axis_cut_x() const
    {
        std::vector<double> cut(nx);
        for (std::size_t i = 0; i < nx; ++i)
            cut[i] = at(i, (ny - 1) / 2);
        return cut;
    }

    std::vector<double> CorrelationMap::axis_cut_y() const
    {
        std::vector<double> cut(ny);
        for (std::size_t j = 0; j < ny; ++j)
            cut[j] = at((nx - 1) / 2, j);
        return cut;
    }

    // Linear autocorrelation of a zero-padded field via its power spectrum
    static arma::mat padded_autocorr(const arma::mat &padded)
    {
        arma::cx_mat spec = arma::fft2(padded);
        arma::mat power = arma::real(spec % arma::conj(spec));
        return arma::real(arma::ifft2(arma::cx_mat(power, arma::zeros<arma::mat>(power.n_rows, power.n_cols))));
    }

    CorrelationMap autocorr2d(std::span<const double> field, std::size_t nx, std::size_t ny, double spacing)
    {
        if (nx < 2 || ny < 2)
            throw std::domain_error("autocorr2d: field must be at least 2 x 2");
        if (field.size() != nx * ny)
            throw std::domain_error("autocorr2d: field size does not match nx * ny");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw std::domain_error("autocorr2d: spacing must be positive");

        arma::mat a(2 * nx, 2 * ny, arma::fill::zeros), w(2 * nx, 2 * ny, arma::fill::zeros);
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t ix = 0; ix < nx; ++ix)
            {
                double v = field[ix + nx * iy];
                if (!std::isfinite(v))
                    throw std::domain_error("autocorr2d: non-finite field value");
                a(ix, iy) = v;
                w(ix, iy) = 1.0;
            }

        const arma::mat ca = padded_autocorr(a);
        const arma::mat cw = padded_autocorr(w);

        CorrelationMap map;
        map.nx = 2 * nx - 1;
        map.ny = 2 * ny - 1;
        map.lag_step = spacing;
        map.values.assign(map.nx * map.ny, 0.0);
        map.valid.assign(map.nx * map.ny, true);

        const long px = long(2 * nx), py = long(2 * ny);
        for (std::size_t j = 0; j < map.ny; ++j)
            for (std::size_t i = 0; i < map.nx; ++i)
            {
                long dx = long(i) - long(nx - 1), dy = long(j) - long(ny - 1);
                arma::uword r = arma::uword((dx + px) % px), c = arma::uword((dy + py) % py);
                if (cw(r, c) < 1e-12)
                    map.valid[i + map.nx * j] = false;
                else
                    map.values[i + map.nx * j] = ca(r, c) / cw(r, c);
            }

        const std::size_t centre = (nx - 1) + map.nx * (ny - 1);
        const double zero_lag = map.values[centre];
        if (!(zero_lag > 0.0))
            throw std::domain_error("autocorr2d: all-zero field, correlation cannot be normalised");

        // Normalise and enforce the point symmetry C(-d) = C(d) the exact result has
        const std::size_t n = map.values.size();
        std::vector<double> sym(n);
        for (std::size_t k = 0; k < n; ++k)
            sym[k] = 0.5 * (map.values[k] + map.values[n - 1 - k]) / zero_lag;
        sym[centre] = 1.0;
        map.values = std::move(sym);
        return map;
    }

    CorrelationMap interpolate(const CorrelationMap &map, std::size_t factor)
    {
        if (factor == 0)
            throw std::domain_error("interpolate: factor must be at least 1");
        if (map.nx % 2 == 0 || map.ny % 2 == 0 || map.values.size() != map.nx * map.ny)
            throw std::domain_error("interpolate: malformed correlation map");
        for (bool v : map.valid)
            if (!v)
                throw numerical_error("interpolate: correlation map has invalid lags");
        if (factor == 1)
            return map;

        const long lx = long(map.nx), ly = long(map.ny);
        const long hx = (lx - 1) / 2, hy = (ly - 1) / 2;
        const long bx = lx * long(factor), by = ly * long(factor);

        // Lag zero moved to index (0, 0); the lag lattice has odd length so there is no
        // Nyquist bin to split
        arma::mat shifted(static_cast<arma::uword>(lx), static_cast<arma::uword>(ly));
        for (long j = 0; j < ly; ++j)
            for (long i = 0; i < lx; ++i)
                shifted(arma::uword((i - hx + lx) % lx), arma::uword((j - hy + ly) % ly)) = map.at(std::size_t(i), std::size_t(j));

        arma::cx_mat spec = arma::fft2(shifted);
        arma::cx_mat big(arma::uword(bx), arma::uword(by), arma::fill::zeros);
        for (long kj = -hy; kj <= hy; ++kj)
            for (long ki = -hx; ki <= hx; ++ki)
                big(arma::uword((ki + bx) % bx), arma::uword((kj + by) % by)) =
                    spec(arma::uword((ki + lx) % lx), arma::uword((kj + ly) % ly));
        arma::mat fine = arma::real(arma::ifft2(big)) * double(factor * factor);

        CorrelationMap out;
        out.nx = std::size_t(2 * hx * long(factor) + 1);
        out.ny = std::size_t(2 * hy * long(factor) + 1);
        out.lag_step = map.lag_step / double(factor);
        out.values.resize(out.nx * out.ny);
        out.valid.assign(out.nx * out.ny, true);
        const long ox = hx * long(factor), oy = hy * long(factor);
        for (long j = 0; j < long(out.ny); ++j)
            for (long i = 0; i < long(out.nx); ++i)
                out.values[std::size_t(i) + out.nx * std::size_t(j)] =
                    fine(arma::uword((i - ox + bx) % bx), arma::uword((j - oy + by) % by));

        const std::size_t n = out.values.size(), centre = std::size_t(ox) + out.nx * std::size_t(oy);
        const double zero_lag = out.values[centre];
        std::vector<double> sym(n);
        for (std::size_t k = 0; k < n; ++k)
            sym[k] = 0.5 * (out.values[k] + out.values[n - 1 - k]) / zero_lag;
        sym[centre] = 1.0;
        out.values = std::move(sym);
        return out;
    }

    CorrelationMap average_corr(const SpatialGrid &grid, std::size_t interp_factor, Execution exec)
    {
        grid.validate();
        if (grid.nx < 2 || grid.ny < 2)
            throw std::domain_error("average_corr: slices must be at least 2 x 2");
        if (interp_factor == 0)
            throw std::domain_error("average_corr: interpolation factor must be at least 1");

        const std::size_t n_slices = grid.nz * grid.nf;
        std::vector<CorrelationMap> maps(n_slices);
        const long long ns = (long long)n_slices;
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
        for (long long s = 0; s < ns; ++s)
        {
            const std::size_t iz = std::size_t(s) % grid.nz, f = std::size_t(s) / grid.nz;
            std::vector<double> slice(grid.nx * grid.ny);
            for (std::size_t iy = 0; iy < grid.ny; ++iy)
                for (std::size_t ix = 0; ix < grid.nx; ++ix)
                    slice[ix + grid.nx * iy] = grid.at(ix, iy, iz, f).real();
            maps[std::size_t(s)] = autocorr2d(slice, grid.nx, grid.ny, grid.spacing);
        }

        // Ordered reduction, independent of the thread schedule
        CorrelationMap mean = maps.front();
        for (std::size_t s = 1; s < n_slices; ++s)
        {
            if (maps[s].nx != mean.nx || maps[s].ny != mean.ny)
                throw std::domain_error("average_corr: slice dimensions differ");
            for (std::size_t k = 0; k < mean.values.size(); ++k)
            {
                mean.values[k] += maps[s].values[k];
                mean.valid[k] = mean.valid[k] && maps[s].valid[k];
            }
        }
        for (double &v : mean.values)
            v /= double(n_slices);
        return interpolate(mean, interp_factor);
    }

    // ---------------------------------------------------------------------------------------
    // Delay domain

    ImpulseResponse cir(std::span<const std::complex<double>> spectrum, double f_spacing)
    {
        const std::size_t n = spectrum.size();
        if (n < 2)
            throw std::domain_error("cir: at least two frequency samples required");
        if (!(f_spacing > 0.0) || !std::isfinite(f_spacing))
            throw std::domain_error("cir: frequency spacing must be positive");

        arma::cx_vec x(n);
        for (std::size_t k = 0; k < n; ++k)
            x(k) = spectrum[k];
        arma::cx_vec t = arma::ifft(x);

        ImpulseResponse out;
        out.taps.assign(t.begin(), t.end());
        out.delay_resolution_s = 1.0 / (double(n) * f_spacing);
        out.tap_width_m = speed_of_light * out.delay_resolution_s;
        out.delay_s.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            out.delay_s[k] = double(k) * out.delay_resolution_s;
        return out;
    }

    static double uniform_spacing(std::span<const double> freq_hz)
    {
        const std::size_t n = freq_hz.size();
        if (n < 2)
            throw std::domain_error("cir: at least two frequency samples required");
        const double df = (freq_hz[n - 1] - freq_hz[0]) / double(n - 1);
        if (!(df > 0.0) || !std::isfinite(df))
            throw std::domain_error("cir: frequency axis must be increasing");
        for (std::size_t k = 0; k < n; ++k)
            if (std::abs(freq_hz[k] - freq_hz[0] - double(k) * df) > 1e-6 * df)
                throw std::domain_error("cir: frequency axis is not uniformly spaced");
        return df;
    }

    ImpulseResponse cir(std::span<const std::complex<double>> spectrum, std::span<const double> freq_hz)
    {
        if (spectrum.size() != freq_hz.size())
            throw std::domain_error("cir: spectrum and frequency axis differ in length");
        return cir(spectrum, uniform_spacing(freq_hz));
    }

    std::vector<double> excess_distance(std::span<const double> delay_s, double los_delay_s)
    {
        if (delay_s.empty())
            throw std::domain_error("excess_distance: empty delay axis");
        auto [lo, hi] = std::minmax_element(delay_s.begin(), delay_s.end());
        if (!(los_delay_s >= *lo && los_delay_s <= *hi))
            throw std::domain_error("excess_distance: LOS delay outside the delay axis");
        std::vector<double> out(delay_s.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = (delay_s[i] - los_delay_s) * speed_of_light;
        return out;
    }

    EnvelopeSet tap_envelopes(const SpatialGrid &grid, std::size_t tap_index, Execution exec)
    {
        grid.validate();
        if (tap_index >= grid.nf)
            throw std::domain_error("tap_envelopes: tap index beyond the impulse response length");
        const double df = uniform_spacing(grid.freq_hz);

        const std::size_t np = grid.points();
        EnvelopeSet set;
        set.values.resize(np);
        set.labels = partition_chequerboard(grid.nx, grid.ny, grid.nz);

        const long long n = (long long)np;
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
        for (long long p = 0; p < n; ++p)
        {
            std::vector<std::complex<double>> spectrum(grid.nf);
            for (std::size_t f = 0; f < grid.nf; ++f)
                spectrum[f] = grid.h[f * np + std::size_t(p)];
            set.values[std::size_t(p)] = std::abs(cir(spectrum, df).taps[tap_index]);
        }
        return set;
    }
}
