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
#include "parallel.hpp"

#include <fftw3.h>
#include <memory>
#include <mutex>

namespace arcmimo
{
    enum class FftDirection
    {
        forward,  // e^{-j...}
        inverse   // e^{+j...}
    };

    namespace detail
    {
        inline std::mutex &fftw_planner_mutex()
        {
            static std::mutex m;
            return m;
        }

        // One plan per call; plans are made on private buffers under the planner lock
        class LinePlan
        {
        public:
            LinePlan(std::size_t n, FftDirection dir) : n_(n)
            {
                std::lock_guard<std::mutex> lock(fftw_planner_mutex());
                in_ = fftw_alloc_complex(n);
                out_ = fftw_alloc_complex(n);
                plan_ = fftw_plan_dft_1d(int(n), in_, out_, dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                         FFTW_ESTIMATE);
            }
            ~LinePlan()
            {
                std::lock_guard<std::mutex> lock(fftw_planner_mutex());
                fftw_destroy_plan(plan_);
                fftw_free(in_);
                fftw_free(out_);
            }
            LinePlan(const LinePlan &) = delete;
            LinePlan &operator=(const LinePlan &) = delete;

            cplx *in() { return reinterpret_cast<cplx *>(in_); }
            cplx *out() { return reinterpret_cast<cplx *>(out_); }
            void run() { fftw_execute(plan_); }

        private:
            std::size_t n_;
            fftw_complex *in_ = nullptr, *out_ = nullptr;
            fftw_plan plan_ = nullptr;
        };

        // Transform every line of `data` along `axis` (outer x n x inner layout).
        // centered: zero frequency / zero position at index n/2 on both sides.
        inline void transform_lines(cplx *data, std::size_t outer, std::size_t n, std::size_t inner,
                                    FftDirection dir, bool centered)
        {
            if (n == 0)
                return;
            const double scale = 1.0 / std::sqrt(double(n));
            const std::size_t lines = outer * inner;
            const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(lines, 1));
            const std::size_t h = n / 2;

            parallel_for(workers, [&](std::size_t w)
                         {
                LinePlan plan(n, dir);
                cplx *in = plan.in(), *out = plan.out();
                for (std::size_t l = lines * w / workers; l < lines * (w + 1) / workers; ++l)
                {
                    cplx *base = data + (l / inner) * n * inner + (l % inner);
                    for (std::size_t i = 0; i < n; ++i)
                    {
                        // ifftshift on input when centered
                        const std::size_t src = centered ? (i + h) % n : i;
                        in[i] = base[src * inner];
                    }
                    plan.run();
                    for (std::size_t i = 0; i < n; ++i)
                    {
                        const std::size_t dst = centered ? (i + h) % n : i;
                        base[dst * inner] = out[i] * scale;
                    }
                } });
        }
    }

    // Unitary DFT along one axis with zero-centered ordering on both sides:
    // index m <-> frequency (m - N/2) * 2pi/(N d), index n <-> position (n - N/2) d.
    template <std::size_t Rank>
    void axis_fft(ComplexArray<Rank> &a, std::size_t axis, FftDirection dir)
    {
        const auto &s = a.shape();
        std::size_t outer = 1;
        for (std::size_t i = 0; i < axis; ++i)
            outer *= s[i];
        detail::transform_lines(a.data(), outer, s[axis], a.stride(axis), dir, true);
    }

    // Unitary DFT along one axis in natural (0..N-1) ordering
    template <std::size_t Rank>
    void axis_dft(ComplexArray<Rank> &a, std::size_t axis, FftDirection dir)
    {
        const auto &s = a.shape();
        std::size_t outer = 1;
        for (std::size_t i = 0; i < axis; ++i)
            outer *= s[i];
        detail::transform_lines(a.data(), outer, s[axis], a.stride(axis), dir, false);
    }

    // Zero-centered frequency of bin m for N samples at spacing d
    inline double centered_frequency(std::size_t m, std::size_t n, double d)
    {
        return (double(m) - double(n / 2)) * 2.0 * pi / (double(n) * d);
    }
}
