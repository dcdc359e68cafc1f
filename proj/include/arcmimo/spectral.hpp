// SPDX-License-Identifier: Apache-2.0
//
// arcmimo: near-field circular-arc MIMO imaging library
// Copyright (C) 2026 The arcmimo contributors
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

#pragma once

#include "common.hpp"
#include "fft.hpp"
#include "geometry.hpp"
#include "hankel.hpp"

namespace arcmimo
{
    struct WavenumberSample
    {
        double k = 0.0;
        double kz = 0.0;
        double krho = 0.0;
        bool evanescent = false;
    };

    // k_rho = sqrt(k^2 - k_z^2/4)
    inline WavenumberSample dispersion_krho(double k, double kz)
    {
        if (!(k > 0.0))
            throw std::invalid_argument("dispersion_krho: k must be positive");
        WavenumberSample s{k, kz, 0.0, false};
        if (std::abs(kz) > 2.0 * k)
            s.evanescent = true;
        else
            s.krho = std::sqrt(std::max(0.0, k * k - 0.25 * kz * kz));
        return s;
    }

    // Stationary-phase evaluation of the Green's-function convolution, envelope dropped
    inline cplx sp_convolution_closed_form(double k, double kz, double rho_t, double rho_r)
    {
        const auto s = dispersion_krho(k, kz);
        if (s.evanescent)
            throw std::domain_error("sp_convolution_closed_form: evanescent sample");
        if (!(rho_t > 0.0) || !(rho_r > 0.0))
            throw std::invalid_argument("sp_convolution_closed_form: distances must be positive");
        return std::polar(1.0, -s.krho * (rho_t + rho_r) + 0.25 * pi);
    }

    // Full linear convolution, length a.size() + b.size() - 1
    inline std::vector<cplx> discrete_convolution(std::span<const cplx> a, std::span<const cplx> b, double step = 1.0)
    {
        if (a.empty() || b.empty())
            return {};
        std::vector<cplx> c(a.size() + b.size() - 1, cplx{});
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            if (a[i] == cplx{})
                continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] += a[i] * b[j];
        }
        for (auto &v : c)
            v *= step;
        return c;
    }

    // Brute-force convolution of the two sampled Green's spectra, returned on the k_z grid itself.
    // The grid must be uniform and contain k_z = 0 as a node.
    inline std::vector<cplx> convolution_oracle(double k, double rho_t, double rho_r, std::span<const double> kz_grid)
    {
        const std::size_t n = kz_grid.size();
        if (n < 2)
            throw std::invalid_argument("convolution_oracle: grid needs at least two points");
        const double step = (kz_grid[n - 1] - kz_grid[0]) / double(n - 1);
        if (!(step > 0.0))
            throw std::invalid_argument("convolution_oracle: grid must be increasing");
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs((kz_grid[i] - kz_grid[i - 1]) - step) > 1e-9 * step)
                throw std::invalid_argument("convolution_oracle: non-uniform k_z grid");
        const double m0f = -kz_grid[0] / step;
        const long m0 = std::lround(m0f);
        if (std::abs(m0f - double(m0)) > 1e-6 || m0 < 0 || m0 >= long(n))
            throw std::invalid_argument("convolution_oracle: grid must contain k_z = 0 as a node");

        std::vector<cplx> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double z = kz_grid[i];
            if (std::abs(z) <= k)
            {
                const double kr = std::sqrt(k * k - z * z);
                a[i] = std::polar(1.0, -kr * rho_t);
                b[i] = std::polar(1.0, -kr * rho_r);
            }
        }

        // c(kz_i) = step * sum_j a_j b_{(i + m0) - j}
        std::vector<cplx> c(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const long t = long(i) + m0;
            cplx acc{};
            const long jlo = std::max(0L, t - long(n) + 1), jhi = std::min(long(n) - 1, t);
            for (long j = jlo; j <= jhi; ++j)
                acc += a[std::size_t(j)] * b[std::size_t(t - j)];
            c[i] = acc * step;
        }
        return c;
    }

    // || o/|o| - c || / ||c|| over samples where mask is set and o != 0
    inline double amplitude_normalized_discrepancy(std::span<const cplx> oracle, std::span<const cplx> closed,
                                                   const std::vector<bool> &mask)
    {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < oracle.size(); ++i)
        {
            if (!mask[i])
                continue;
            const double m = std::abs(oracle[i]);
            const cplx o = m > 0.0 ? oracle[i] / m : cplx{};
            num += std::norm(o - closed[i]);
            den += std::norm(closed[i]);
        }
        return den > 0.0 ? std::sqrt(num / den) : 0.0;
    }

    // ----- Convolution-accuracy study (single pixel, single frequency) ------

    struct ConvolutionStudySetup
    {
        double radius = 1.0;
        double frequency = 30e9;
        double theta_tx_deg = -20.0;
        double theta_rx_deg = 20.0;
        double pixel_x = 0.25;
        double pixel_y = 0.0;
        double scan_step = 0.01;  // sets the compared band |k_z| <= pi / scan_step
        std::size_t samples = 16001;
    };

    struct ConvolutionStudyResult
    {
        double k = 0.0;
        double rho_t = 0.0, rho_r = 0.0;
        double band_limit = 0.0;
        double discrepancy = 0.0;
        std::vector<double> kz;
        std::vector<cplx> closed, oracle;
    };

    inline ConvolutionStudyResult run_convolution_study(const ConvolutionStudySetup &s)
    {
        ConvolutionStudyResult r;
        r.k = 2.0 * pi * s.frequency / speed_of_light;
        const Vec3 p{s.pixel_x, s.pixel_y, 0.0};
        r.rho_t = distance(p, antenna_position(s.theta_tx_deg * pi / 180.0, 0.0, s.radius));
        r.rho_r = distance(p, antenna_position(s.theta_rx_deg * pi / 180.0, 0.0, s.radius));
        r.band_limit = std::min(pi / s.scan_step, 2.0 * r.k);

        const std::size_t n = s.samples | 1u;
        r.kz.resize(n);
        const double step = 4.0 * r.k / double(n - 1);
        for (std::size_t i = 0; i < n; ++i)
            r.kz[i] = (double(i) - double(n / 2)) * step;

        r.oracle = convolution_oracle(r.k, r.rho_t, r.rho_r, r.kz);
        r.closed.assign(n, cplx{});
        std::vector<bool> mask(n, false);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (std::abs(r.kz[i]) <= r.band_limit)
            {
                r.closed[i] = sp_convolution_closed_form(r.k, r.kz[i], r.rho_t, r.rho_r);
                mask[i] = true;
            }
        }
        r.discrepancy = amplitude_normalized_discrepancy(r.oracle, r.closed, mask);
        return r;
    }
}
