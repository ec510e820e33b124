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

#include "twdp/fading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace twdp
{
    namespace
    {
        void require_finite_nonnegative(double v, const char *name)
        {
            if (!std::isfinite(v) || v < 0.0)
                throw std::domain_error(std::string(name) + " must be finite and nonnegative.");
        }

        void require_supported_k(double k)
        {
            if (k > max_supported_k)
                throw std::domain_error("K-factor exceeds the supported maximum of 1e4.");
        }

        // Number of series terms until zeta^k I_k(x) / I_0(x) < e^-40, using
        // I_k / I_0 <= exp(-k^2 / (2 (x + k))).
        int series_length(double zeta, double x)
        {
            const double log_inv_zeta = zeta < 1.0 ? -std::log(zeta) : 0.0;
            int k = 1;
            while (k * log_inv_zeta + 0.5 * k * double(k) / (x + k) < 40.0)
                ++k;
            return k;
        }
    }

    void FadingParams::validate() const
    {
        if (!std::isfinite(k) || k < 0.0)
            throw std::domain_error("K-factor must be finite and nonnegative.");
        if (!std::isfinite(delta) || delta < 0.0 || delta > 1.0)
            throw std::domain_error("Delta must lie in [0, 1].");
        if (!std::isfinite(omega) || omega <= 0.0)
            throw std::domain_error("Omega must be finite and positive.");
    }

    double FadingParams::sigma2() const
    {
        return sigma2_from_k(k, omega);
    }

    SpecularAmplitudes FadingParams::specular() const
    {
        return specular_amplitudes(k, delta, omega);
    }

    FadingParams FadingParams::from_components(double v1, double v2, double sigma2)
    {
        require_finite_nonnegative(v1, "v1");
        require_finite_nonnegative(v2, "v2");
        if (!std::isfinite(sigma2) || sigma2 <= 0.0)
            throw std::domain_error("sigma2 must be finite and positive.");

        const double specular_power = v1 * v1 + v2 * v2;
        FadingParams p;
        p.k = specular_power / (2.0 * sigma2);
        p.delta = specular_power > 0.0 ? 2.0 * v1 * v2 / specular_power : 0.0;
        p.omega = specular_power + 2.0 * sigma2;
        return p;
    }

    double bessel_i0e(double x)
    {
        x = std::abs(x);
        if (x < 20.0)
        {
            // Power series, all terms positive
            const double q = 0.25 * x * x;
            double term = 1.0, sum = 1.0;
            for (int k = 1; k < 200; ++k)
            {
                term *= q / (double(k) * double(k));
                sum += term;
                if (term < 1e-17 * sum)
                    break;
            }
            return sum * std::exp(-x);
        }

        // Asymptotic expansion, truncation error below exp(-2x)
        const double inv8x = 1.0 / (8.0 * x);
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 60; ++k)
        {
            const double odd = 2.0 * k - 1.0;
            const double next = term * odd * odd * inv8x / k;
            if (next > term)
                break;
            term = next;
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return sum / std::sqrt(2.0 * std::numbers::pi * x);
    }

    double marcum_q1(double a, double b)
    {
        if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0)
            throw std::domain_error("marcum_q1: arguments must be finite and nonnegative.");

        if (b == 0.0)
            return 1.0;
        if (a == 0.0)
            return std::exp(-0.5 * b * b);

        const double x = a * b;
        const double d = a - b;
        const double prefactor = std::exp(-0.5 * d * d) * bessel_i0e(x);
        const bool direct = a < b; // Q1 = prefactor * sum_{k>=0} (a/b)^k I_k / I_0
        const double zeta = direct ? a / b : b / a;

        if (prefactor == 0.0)
            return direct ? 0.0 : 1.0;

        if (x < 1e-150) // I_k(x) / I_0(x) ~ (x/2)^k / k!
            return direct ? prefactor : 1.0 - prefactor * zeta * 0.5 * x;

        // Backward (Miller) recurrence y_{k-1} = y_{k+1} + (2k / x) y_k yields y_k proportional
        // to I_k(x). Terms of the series are accumulated in Horner form along the way.
        const int n_terms = series_length(zeta, x);
        const int n_start = n_terms + 16 + int(3.0 * std::sqrt(x));

        double y_above = 0.0, y = 1.0, horner = 0.0;
        for (int k = n_start; k >= 1; --k)
        {
            if (k <= n_terms)
                horner = y + zeta * horner;
            const double y_below = y_above + (2.0 * k / x) * y;
            y_above = y;
            y = y_below;
            if (y > 1e250)
            {
                y *= 1e-250;
                y_above *= 1e-250;
                horner *= 1e-250;
            }
        }

        // y now holds y_0; horner = sum_{k>=1} zeta^{k-1} y_k
        const double tail = zeta * horner / y;
        const double q = direct ? prefactor * (1.0 + tail) : 1.0 - prefactor * tail;
        return std::clamp(q, 0.0, 1.0);
    }

    double sigma2_from_k(double k, double omega)
    {
        if (!std::isfinite(k) || k < 0.0)
            throw std::domain_error("K-factor must be finite and nonnegative.");
        if (!std::isfinite(omega) || omega <= 0.0)
            throw std::domain_error("Omega must be finite and positive.");
        return omega / (2.0 * (1.0 + k));
    }

    SpecularAmplitudes specular_amplitudes(double k, double delta, double omega)
    {
        FadingParams{k, delta, omega}.validate();
        const double scale = 0.5 * std::sqrt(k * omega / (k + 1.0));
        const double p = std::sqrt(1.0 + delta);
        const double m = std::sqrt(1.0 - delta);
        return {scale * (p + m), scale * (p - m)};
    }

    double rayleigh_cdf(double r, double omega)
    {
        require_finite_nonnegative(r, "r");
        if (!std::isfinite(omega) || omega <= 0.0)
            throw std::domain_error("Omega must be finite and positive.");
        return -std::expm1(-r * r / omega);
    }

    double rayleigh_pdf(double r, double omega)
    {
        require_finite_nonnegative(r, "r");
        if (!std::isfinite(omega) || omega <= 0.0)
            throw std::domain_error("Omega must be finite and positive.");
        return 2.0 * r / omega * std::exp(-r * r / omega);
    }

    double rice_cdf(double r, double k, double omega)
    {
        require_finite_nonnegative(r, "r");
        const double s2 = sigma2_from_k(k, omega);
        require_supported_k(k);
        if (r == 0.0)
            return 0.0;
        return 1.0 - marcum_q1(std::sqrt(2.0 * k), r / std::sqrt(s2));
    }

    double rice_pdf(double r, double k, double omega)
    {
        require_finite_nonnegative(r, "r");
        const double s2 = sigma2_from_k(k, omega);
        const double s = std::sqrt(2.0 * k * s2);
        const double d = r - s;
        return r / s2 * std::exp(-0.5 * d * d / s2) * bessel_i0e(r * s / s2);
    }

    double twdp_cdf(double r, const FadingParams &params, int phase_nodes)
    {
        require_finite_nonnegative(r, "r");
        params.validate();
        require_supported_k(params.k);
        if (phase_nodes < 2)
            throw std::domain_error("twdp_cdf: at least two phase nodes are required.");
        if (r == 0.0)
            return 0.0;

        const double b = r / std::sqrt(params.sigma2());
        const double two_k = 2.0 * params.k;
        auto integrand = [&](int node)
        {
            const double alpha = 2.0 * std::numbers::pi * node / phase_nodes;
            const double a2 = two_k * std::max(0.0, 1.0 + params.delta * std::cos(alpha));
            return marcum_q1(std::sqrt(a2), b);
        };

        // Nodes j and n - j share cos(alpha)
        double sum = integrand(0);
        const int half = phase_nodes / 2;
        for (int j = 1; j < (phase_nodes + 1) / 2; ++j)
            sum += 2.0 * integrand(j);
        if (phase_nodes % 2 == 0)
            sum += integrand(half);

        return std::clamp(1.0 - sum / phase_nodes, 0.0, 1.0);
    }

    double twdp_pdf(double r, const FadingParams &params, int phase_nodes)
    {
        require_finite_nonnegative(r, "r");
        params.validate();
        const double h = 1e-4 * std::sqrt(params.omega);
        const double lo = std::max(0.0, r - h);
        const double hi = r + h;
        const double pdf = (twdp_cdf(hi, params, phase_nodes) - twdp_cdf(lo, params, phase_nodes)) / (hi - lo);
        return std::max(0.0, pdf);
    }
}
