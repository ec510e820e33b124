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

#ifndef twdp_fading_H
#define twdp_fading_H

// Envelope distributions of Rayleigh, Rice and two-wave-with-diffuse-power (TWDP) fading.
//
// The TWDP baseband signal is  r = V1 exp(j phi1) + V2 exp(j phi2) + X + jY  with
// uniform independent phases and X, Y ~ N(0, sigma2). It is parametrised by
//   K     = (V1^2 + V2^2) / (2 sigma2)        specular-to-diffuse power ratio (linear)
//   delta = 2 V1 V2 / (V1^2 + V2^2)           specular amplitude balance, 0 = Rice, 1 = equal waves
//   omega = V1^2 + V2^2 + 2 sigma2            mean envelope power
// All functions are pure and thread-safe.

namespace twdp
{
    // Largest K accepted by the CDF/PDF evaluators. The 2048-node phase quadrature keeps
    // ~3 nodes per transition width up to this value.
    inline constexpr double max_supported_k = 1.0e4;

    // Default number of phase nodes of the TWDP CDF quadrature.
    inline constexpr int default_phase_nodes = 2048;

    struct SpecularAmplitudes
    {
        double v1 = 0.0; // Stronger specular amplitude
        double v2 = 0.0; // Weaker specular amplitude, v2 <= v1
    };

    struct FadingParams
    {
        double k = 0.0;     // Linear K-factor, k >= 0
        double delta = 0.0; // In [0, 1]
        double omega = 1.0; // Mean envelope power, > 0

        // Throws std::domain_error if any invariant is violated
        void validate() const;

        double sigma2() const;
        SpecularAmplitudes specular() const;

        // Inverse of specular(): (v1, v2, sigma2) -> (k, delta, omega)
        static FadingParams from_components(double v1, double v2, double sigma2);
    };

    // Exponentially scaled modified Bessel function exp(-|x|) I0(x)
    double bessel_i0e(double x);

    // Generalised Marcum Q-function of order one, Q1(a, b), absolute error <= 1e-10.
    // Summation of the Bessel series with exponentially scaled terms obtained by backward
    // recurrence; the complementary series is used for a >= b so no cancellation occurs.
    double marcum_q1(double a, double b);

    // Diffuse power per quadrature component, omega / (2 (1 + k))
    double sigma2_from_k(double k, double omega);

    SpecularAmplitudes specular_amplitudes(double k, double delta, double omega);

    double rayleigh_cdf(double r, double omega);
    double rayleigh_pdf(double r, double omega);

    double rice_cdf(double r, double k, double omega);

    // Closed-form Rice density (r / s2) exp(-(r^2 + s^2) / (2 s2)) I0(r s / s2)
    double rice_pdf(double r, double k, double omega);

    // TWDP envelope CDF as the phase average of Rice CDFs,
    //   F(r) = 1 - 1/(2 pi) int_0^{2 pi} Q1(sqrt(2 K (1 + delta cos a)), r / sigma) da,
    // evaluated with the composite trapezoid rule on `phase_nodes` equispaced nodes.
    double twdp_cdf(double r, const FadingParams &params, int phase_nodes = default_phase_nodes);

    // TWDP density as the central difference of twdp_cdf with step 1e-4 sqrt(omega)
    double twdp_pdf(double r, const FadingParams &params, int phase_nodes = default_phase_nodes);
}

#endif
