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

#include <algorithm>
#include <limits>

namespace arcmimo
{
    namespace detail
    {
        inline constexpr double euler_gamma = 0.57721566490153286061;
        inline constexpr double bessel_split = 12.0;

        // J_0..J_n by Miller's downward recurrence, normalized with J0 + 2 sum J_2k = 1
        inline std::vector<double> bessel_j_miller(std::size_t max_order, double x)
        {
            const double top = std::max(double(max_order), x);
            std::size_t m = std::size_t(top) + 20 + std::size_t(std::pow(75.0 * std::sqrt(std::max(x, 1.0)), 2.0 / 3.0));
            m += m & 1u;

            std::vector<double> j(max_order + 1, 0.0);
            double jp = 0.0, jc = 1e-300, sum = 0.0;
            constexpr double big = 1e250;
            for (std::size_t n = m; n > 0; --n)
            {
                // jc = J_n, jp = J_{n+1}  ->  J_{n-1}
                const double jm = 2.0 * double(n) / x * jc - jp;
                jp = jc;
                jc = jm;
                const std::size_t k = n - 1;
                if (k <= max_order)
                    j[k] = jc;
                if (k % 2 == 0 && k > 0)
                    sum += 2.0 * jc;
                if (std::abs(jc) > big)
                {
                    jc /= big;
                    jp /= big;
                    sum /= big;
                    for (std::size_t i = k; i <= max_order; ++i)
                        j[i] /= big;
                }
            }
            sum += jc;
            for (auto &v : j)
                v /= sum;
            return j;
        }

        // Y0, Y1 from ascending series, accurate for x <= bessel_split
        inline std::pair<double, double> bessel_y01_series(double x, double j0, double j1)
        {
            const double q = 0.25 * x * x;
            const double lg = std::log(0.5 * x) + euler_gamma;

            double t0 = 1.0, h = 0.0, s0 = 0.0;
            double t1 = 0.5 * x, s1 = 0.0;
            for (int k = 0; k < 200; ++k)
            {
                if (k > 0)
                {
                    t0 *= -q / (double(k) * double(k));
                    t1 *= -q / (double(k) * double(k + 1));
                    h += 1.0 / double(k);
                    s0 -= t0 * h;
                }
                // psi(k+1) + psi(k+2) + 2 gamma = 2 H_k + 1/(k+1); the gamma part sits in lg
                s1 += t1 * (2.0 * h + 1.0 / double(k + 1));
                if (k > 2 && std::abs(t0) * (h + 1.0) < 1e-17 * std::abs(s0) && std::abs(t1) * (h + 1.0) < 1e-17 * std::abs(s1))
                    break;
            }
            const double y0 = 2.0 / pi * (lg * j0 + s0);
            const double y1 = -2.0 / (pi * x) + 2.0 / pi * lg * j1 - s1 / pi;
            return {y0, y1};
        }

        // Hankel asymptotic expansion, optimally truncated; accurate for x >= bessel_split
        inline std::pair<double, double> bessel_y01_asymptotic(double x)
        {
            auto pq = [x](double nu, double &p, double &q)
            {
                const double mu = 4.0 * nu * nu;
                p = 1.0;
                q = 0.0;
                double term = 1.0, last = std::numeric_limits<double>::infinity();
                for (int k = 1; k < 60; ++k)
                {
                    const double odd = double(2 * k - 1);
                    const double next = term * (mu - odd * odd) / (double(k) * 8.0 * x);
                    if (std::abs(next) >= last)
                        break;
                    last = std::abs(next);
                    term = next;
                    // k odd -> Q, k even -> P with alternating signs
                    if (k % 2 == 1)
                        q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
                    else
                        p += ((k / 2) % 2 == 1 ? -1.0 : 1.0) * term;
                    if (last < 1e-17)
                        break;
                }
            };
            double p0, q0, p1, q1;
            pq(0.0, p0, q0);
            pq(1.0, p1, q1);
            const double amp = std::sqrt(2.0 / (pi * x));
            const double c0 = x - 0.25 * pi, c1 = x - 0.75 * pi;
            return {amp * (p0 * std::sin(c0) + q0 * std::cos(c0)), amp * (p1 * std::sin(c1) + q1 * std::cos(c1))};
        }
    }

    // Integer-order Hankel functions of the first kind H1_n(x) = J_n(x) + j Y_n(x), n = 0..max_order
    class HankelTable
    {
    public:
        HankelTable(std::size_t max_order, double x) : x_(x)
        {
            if (!(x > 0.0) || !std::isfinite(x))
                throw std::invalid_argument("hankel1: argument must be positive");
            const std::size_t n_eval = std::max<std::size_t>(max_order, 1);
            j_ = detail::bessel_j_miller(n_eval, x);
            y_.assign(n_eval + 1, 0.0);

            auto [y0, y1] = x < detail::bessel_split ? detail::bessel_y01_series(x, j_[0], j_[1])
                                                     : detail::bessel_y01_asymptotic(x);
            y_[0] = y0;
            y_[1] = y1;
            for (std::size_t n = 1; n < n_eval; ++n)
                y_[n + 1] = 2.0 * double(n) / x * y_[n] - y_[n - 1];

            j_.resize(max_order + 1);
            y_.resize(max_order + 1);

            wronskian_error_ = 0.0;
            const double w = 2.0 / (pi * x);
            for (std::size_t n = 0; n + 1 <= max_order; ++n)
            {
                const double v = j_[n + 1] * y_[n] - j_[n] * y_[n + 1];
                if (!std::isfinite(v) || std::abs(j_[n + 1]) < 1e-280)
                    break;
                wronskian_error_ = std::max(wronskian_error_, std::abs(v - w) / w);
            }
            if (wronskian_error_ > 1e-8)
                throw std::runtime_error("hankel1: Wronskian check failed at x = " + std::to_string(x));
        }

        double argument() const { return x_; }
        std::size_t max_order() const { return j_.size() - 1; }
        double wronskian_error() const { return wronskian_error_; }

        double j(std::size_t n) const { return j_[n]; }
        double y(std::size_t n) const { return y_[n]; }

        // H1_n for any |n| <= max_order, with H1_{-n} = (-1)^n H1_n
        cplx operator[](long n) const
        {
            const std::size_t a = std::size_t(n < 0 ? -n : n);
            const cplx h{j_[a], y_[a]};
            return (n < 0 && (a & 1u)) ? -h : h;
        }

    private:
        double x_;
        std::vector<double> j_, y_;
        double wronskian_error_ = 0.0;
    };

    inline HankelTable hankel1(std::size_t max_order, double x) { return HankelTable(max_order, x); }
}
