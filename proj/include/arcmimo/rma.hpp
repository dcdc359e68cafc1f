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
#include "forward.hpp"
#include "geometry.hpp"
#include "hankel.hpp"
#include "io.hpp"
#include "parallel.hpp"

#include <chrono>
#include <filesystem>
#include <limits>
#include <ostream>

namespace arcmimo
{
    // s(k, theta_T, theta_R, k_z), indexed [f][tx][rx][kz]
    struct ScanSpectrum
    {
        FrequencyGrid freqs;
        UniformAxis tx, rx, kz;
        double z_reference = 0.0;  // scan position used as the phase origin of k_z
        ComplexArray<4> data;
    };

    // s(k_T, k_R, theta_T, theta_R, k_z), indexed [kT][kR][tx][rx][kz].
    // After angular_deconvolve the angle axes hold phi_T, phi_R.
    struct PolarSpectrum
    {
        UniformAxis kt, kr;  // rad/m
        UniformAxis tx, rx;  // rad
        UniformAxis kz;      // rad/m
        ComplexArray<5> data;
    };
    using IncreasedSpectrum = PolarSpectrum;

    struct CartesianGridSpec
    {
        UniformAxis kx, ky, kz;
    };

    struct BandExtents
    {
        double kx_min = std::numeric_limits<double>::infinity(), kx_max = -std::numeric_limits<double>::infinity();
        double ky_min = std::numeric_limits<double>::infinity(), ky_max = -std::numeric_limits<double>::infinity();
        double kz_min = std::numeric_limits<double>::infinity(), kz_max = -std::numeric_limits<double>::infinity();
        bool empty() const { return !(kx_min <= kx_max); }
    };

    // G(k_x, k_y, k_z) with per-cell deposit weights, indexed [kx][ky][kz]
    struct SpatialSpectrum
    {
        CartesianGridSpec grid;
        ComplexArray<3> data;
        std::vector<double> weights;
        BandExtents band;
    };

    enum class Interpolation
    {
        linear
    };

    struct RmaOptions
    {
        Interpolation interpolation = Interpolation::linear;
        double hankel_floor = 1e-3;  // relative |H| floor for the division
        double order_margin = 20.0;  // keep |xi| <= k_rho R0 + margin
        bool matched_filter = false;
        double cos_floor = 0.1;
        double weight_floor = 0.05;  // relative to the largest cell weight
        bool verbose = false;
        std::ostream *log = nullptr;
        std::filesystem::path dump_dir;
    };

    // ----- scan axis -------------------------------------------------------

    inline ScanSpectrum scan_axis_ft(const EchoCube &echo)
    {
        ScanSpectrum s;
        s.freqs = echo.freqs;
        s.tx = echo.tx;
        s.rx = echo.rx;
        const std::size_t nz = echo.z.count;
        const double dk = 2.0 * pi / (double(nz) * echo.z.step);
        s.kz = {nz, -double(nz / 2) * dk, dk};
        s.z_reference = echo.z[nz / 2];
        s.data = echo.data;
        axis_fft(s.data, 3, FftDirection::forward);

        if (s.z_reference != 0.0)
        {
            std::vector<cplx> ph(nz);
            for (std::size_t m = 0; m < nz; ++m)
                ph[m] = std::polar(1.0, -s.kz[m] * s.z_reference);
            for (std::size_t i = 0; i < s.data.size(); ++i)
                s.data[i] *= ph[i % nz];
        }
        return s;
    }

    inline EchoCube scan_axis_ift(const ScanSpectrum &s, const UniformAxis &z)
    {
        EchoCube e(s.freqs, s.tx, s.rx, z);
        e.data = s.data;
        const std::size_t nz = s.kz.count;
        if (s.z_reference != 0.0)
            for (std::size_t i = 0; i < e.data.size(); ++i)
                e.data[i] *= std::polar(1.0, s.kz[i % nz] * s.z_reference);
        axis_fft(e.data, 3, FftDirection::inverse);
        return e;
    }

    // ----- dimension increase ----------------------------------------------

    // k_rho for the split wavenumbers: sqrt(4 k_half^2 - k_z^2/4); <= 0 means evanescent
    inline double split_krho_squared(double k_half, double kz) { return 4.0 * k_half * k_half - 0.25 * kz * kz; }

    inline IncreasedSpectrum dimension_increase(const ScanSpectrum &s)
    {
        const std::size_t nf = s.freqs.count();
        if (nf < 2)
            throw std::invalid_argument("dimension_increase: at least two frequencies are required");
        const double k0 = s.freqs.wavenumber(0), dk = s.freqs.k_step();
        const std::size_t nt = s.tx.count, nr = s.rx.count, nz = s.kz.count;

        IncreasedSpectrum inc;
        inc.kt = {nf, 0.5 * k0, 0.5 * dk};
        inc.kr = inc.kt;
        inc.tx = s.tx;
        inc.rx = s.rx;
        inc.kz = s.kz;
        inc.data = ComplexArray<5>({nf, nf, nt, nr, nz});

        const std::size_t block = nt * nr * nz;
        parallel_for(nf * nf, [&](std::size_t ab)
                     {
            const std::size_t a = ab / nf, b = ab % nf;
            const std::size_t u0 = (a + b) / 2;
            const bool odd = (a + b) & 1u;
            const cplx *lo = s.data.data() + u0 * block;
            const cplx *hi = odd ? lo + block : lo;
            cplx *dst = inc.data.data() + ab * block;
            const double kt = inc.kt[a], kr = inc.kr[b];
            for (std::size_t i = 0; i < block; ++i)
            {
                const double kz = inc.kz[i % nz];
                if (split_krho_squared(kt, kz) <= 0.0 || split_krho_squared(kr, kz) <= 0.0)
                    dst[i] = cplx{};
                else
                    dst[i] = odd ? 0.5 * (lo[i] + hi[i]) : lo[i];
            } });
        return inc;
    }

    // ----- angular deconvolution -------------------------------------------

    // Spectrum of the angular kernel exp(-j x cos theta) over the illuminated arc:
    // K_xi = pi e^{-j pi xi / 2} conj(H1_xi(x))
    inline cplx angular_kernel_coefficient(const HankelTable &h, long xi)
    {
        return pi * std::polar(1.0, -0.5 * pi * double(xi)) * std::conj(h[xi]);
    }

    // Highest integer order below the angular Nyquist limit pi/step
    inline long angular_nyquist_order(double step)
    {
        const double lim = pi / step;
        long n = long(std::ceil(lim)) - 1;
        if (double(n + 1) < lim)
            ++n;
        return std::max(0L, n);
    }

    // Toeplitz taps m(d * step), d = -(count-1)..(count-1), of the regularized inverse kernel
    inline std::vector<cplx> deconvolution_taps(double x, std::size_t count, double step, const RmaOptions &opt)
    {
        std::vector<cplx> taps(2 * count - 1, cplx{});
        const long xi_max = std::min(angular_nyquist_order(step), long(std::floor(x + opt.order_margin)));
        if (xi_max < 0)
            return taps;
        const HankelTable h(std::size_t(xi_max), x);

        const std::size_t nxi = std::size_t(2 * xi_max + 1);
        std::vector<cplx> kxi(nxi), w(nxi, cplx{});
        double kmax = 0.0;
        for (std::size_t i = 0; i < nxi; ++i)
        {
            kxi[i] = angular_kernel_coefficient(h, long(i) - xi_max);
            kmax = std::max(kmax, std::abs(kxi[i]));
        }
        const double floor = opt.hankel_floor * kmax;
        for (std::size_t i = 0; i < nxi; ++i)
        {
            const double m = std::abs(kxi[i]);
            if (opt.matched_filter)
                w[i] = std::conj(kxi[i]) / std::max(m * m, floor * floor);
            else if (m > floor)
                w[i] = 1.0 / kxi[i];
        }

        const double scale = step / (2.0 * pi);
        for (long d = -long(count) + 1; d < long(count); ++d)
        {
            const cplx rot = std::polar(1.0, double(d) * step);
            cplx ph = std::polar(1.0, -double(xi_max) * double(d) * step);
            cplx acc{};
            for (std::size_t i = 0; i < nxi; ++i)
            {
                acc += w[i] * ph;
                ph *= rot;
            }
            taps[std::size_t(d + long(count) - 1)] = scale * acc;
        }
        return taps;
    }

    inline PolarSpectrum angular_deconvolve(const IncreasedSpectrum &inc, double radius, const RmaOptions &opt = {})
    {
        if (!(radius > 0.0))
            throw std::invalid_argument("angular_deconvolve: radius must be positive");
        const std::size_t nf = inc.kt.count, nt = inc.tx.count, nr = inc.rx.count, nz = inc.kz.count;

        // k_rho tables and kernels, shared by all slices with the same (k_half, k_z)
        auto krho = [&](const UniformAxis &ax, std::size_t a, std::size_t m)
        {
            const double q = split_krho_squared(ax[a], inc.kz[m]);
            return q > 0.0 ? std::sqrt(q) : 0.0;
        };
        std::vector<std::vector<cplx>> taps_t(nf * nz), taps_r(nf * nz);
        parallel_for(nf * nz, [&](std::size_t i)
                     {
            const std::size_t a = i / nz, m = i % nz;
            const double kt = krho(inc.kt, a, m), kr = krho(inc.kr, a, m);
            if (kt > 0.0)
                taps_t[i] = deconvolution_taps(kt * radius, nt, nt > 1 ? inc.tx.step : 2.0 * pi, opt);
            if (kr > 0.0)
                taps_r[i] = deconvolution_taps(kr * radius, nr, nr > 1 ? inc.rx.step : 2.0 * pi, opt); });

        std::vector<double> cos_t(nt), cos_r(nr);
        for (std::size_t t = 0; t < nt; ++t)
            cos_t[t] = std::max(std::cos(inc.tx[t]), opt.cos_floor);
        for (std::size_t r = 0; r < nr; ++r)
            cos_r[r] = std::max(std::cos(inc.rx[r]), opt.cos_floor);

        PolarSpectrum out{inc.kt, inc.kr, inc.tx, inc.rx, inc.kz, ComplexArray<5>(inc.data.shape())};
        const std::size_t block = nt * nr * nz;

        parallel_for(nf * nf, [&](std::size_t ab)
                     {
            const std::size_t a = ab / nf, b = ab % nf;
            const cplx *src = inc.data.data() + ab * block;
            cplx *dst = out.data.data() + ab * block;
            std::vector<cplx> s(nt * nr), u(nt * nr);
            for (std::size_t m = 0; m < nz; ++m)
            {
                const double kt = krho(inc.kt, a, m), kr = krho(inc.kr, b, m);
                if (kt <= 0.0 || kr <= 0.0)
                    continue;  // output already zero
                const auto &mt = taps_t[a * nz + m];
                const auto &mr = taps_r[b * nz + m];
                for (std::size_t i = 0; i < nt * nr; ++i)
                    s[i] = src[i * nz + m];

                // receive axis
                for (std::size_t t = 0; t < nt; ++t)
                    for (std::size_t i = 0; i < nr; ++i)
                    {
                        cplx acc{};
                        const cplx *tap = mr.data() + i + nr - 1;
                        for (std::size_t j = 0; j < nr; ++j)
                            acc += *(tap - j) * s[t * nr + j];
                        u[t * nr + i] = acc;
                    }
                // transmit axis, then the Jacobian prefactor
                const double pre = 1.0 / (kt * kr);
                for (std::size_t i = 0; i < nt; ++i)
                    for (std::size_t r = 0; r < nr; ++r)
                    {
                        cplx acc{};
                        for (std::size_t j = 0; j < nt; ++j)
                            acc += mt[i + nt - 1 - j] * u[j * nr + r];
                        dst[(i * nr + r) * nz + m] = acc * (pre / (cos_t[i] * cos_r[r]));
                    }
            } });
        return out;
    }

    // ----- polar to Cartesian ----------------------------------------------

    inline BandExtents occupied_band(const PolarSpectrum &p)
    {
        BandExtents e;
        const std::size_t nf = p.kt.count, nz = p.kz.count;
        for (std::size_t a = 0; a < nf; ++a)
            for (std::size_t b = 0; b < nf; ++b)
                for (std::size_t m = 0; m < nz; ++m)
                {
                    const double qt = split_krho_squared(p.kt[a], p.kz[m]), qr = split_krho_squared(p.kr[b], p.kz[m]);
                    if (qt <= 0.0 || qr <= 0.0)
                        continue;
                    const double kt = std::sqrt(qt), kr = std::sqrt(qr);
                    for (double ft : {p.tx.origin, p.tx.last()})
                        for (double fr : {p.rx.origin, p.rx.last()})
                        {
                            const double kx = -(kt * std::sin(ft) + kr * std::sin(fr));
                            e.kx_min = std::min(e.kx_min, kx);
                            e.kx_max = std::max(e.kx_max, kx);
                        }
                    // k_y is largest where both cosines are largest
                    auto cmax = [](const UniformAxis &ax)
                    { return (ax.origin <= 0.0 && ax.last() >= 0.0) ? 1.0 : std::max(std::cos(ax.origin), std::cos(ax.last())); };
                    auto cmin = [](const UniformAxis &ax)
                    { return std::min(std::cos(ax.origin), std::cos(ax.last())); };
                    e.ky_min = std::min(e.ky_min, kt * cmin(p.tx) + kr * cmin(p.rx));
                    e.ky_max = std::max(e.ky_max, kt * cmax(p.tx) + kr * cmax(p.rx));
                    e.kz_min = std::min(e.kz_min, p.kz[m]);
                    e.kz_max = std::max(e.kz_max, p.kz[m]);
                }
        return e;
    }

    // Per axis: N = next pow2 >= 2 * scene count, dK = 2 pi / (N d)
    inline CartesianGridSpec default_cartesian_grid(const PolarSpectrum &p, const SceneGrid &scene)
    {
        const BandExtents band = occupied_band(p);
        if (band.empty())
            throw std::invalid_argument("default_cartesian_grid: polar spectrum has no propagating samples");
        auto make = [](const UniformAxis &ax, bool centered, double lo)
        {
            const std::size_t n = next_pow2(2 * ax.count);
            const double dk = 2.0 * pi / (double(n) * ax.step);
            const double origin = centered ? -double(n / 2) * dk : std::floor(lo / dk - 2.0) * dk;
            return UniformAxis{n, origin, dk};
        };
        return {make(scene.x, true, 0.0), make(scene.y, false, band.ky_min), make(scene.z, true, 0.0)};
    }

    inline SpatialSpectrum stolt_grid(const PolarSpectrum &p, const CartesianGridSpec &spec, const RmaOptions &opt = {})
    {
        SpatialSpectrum out;
        out.grid = spec;
        out.band = occupied_band(p);
        const std::size_t nx = spec.kx.count, ny = spec.ky.count, nzc = spec.kz.count;

        if (!out.band.empty())
        {
            auto inside = [](const UniformAxis &ax, double lo, double hi)
            { return lo >= ax.origin && hi <= ax.last(); };
            if (!inside(spec.kx, out.band.kx_min, out.band.kx_max) || !inside(spec.ky, out.band.ky_min, out.band.ky_max) ||
                !inside(spec.kz, out.band.kz_min, out.band.kz_max))
            {
                std::ostringstream msg;
                msg << "stolt_grid: Cartesian grid does not cover the occupied band; required kx [" << out.band.kx_min << ", "
                    << out.band.kx_max << "], ky [" << out.band.ky_min << ", " << out.band.ky_max << "], kz ["
                    << out.band.kz_min << ", " << out.band.kz_max << "]; grid kx [" << spec.kx.origin << ", " << spec.kx.last()
                    << "], ky [" << spec.ky.origin << ", " << spec.ky.last() << "], kz [" << spec.kz.origin << ", "
                    << spec.kz.last() << "]";
                throw std::invalid_argument(msg.str());
            }
        }

        out.data = ComplexArray<3>({nx, ny, nzc});
        out.weights.assign(nx * ny * nzc, 0.0);

        const std::size_t nf = p.kt.count, nt = p.tx.count, nr = p.rx.count, nz = p.kz.count;
        std::vector<double> sin_t(nt), cos_t(nt), sin_r(nr), cos_r(nr);
        for (std::size_t t = 0; t < nt; ++t)
        {
            sin_t[t] = std::sin(p.tx[t]);
            cos_t[t] = std::cos(p.tx[t]);
        }
        for (std::size_t r = 0; r < nr; ++r)
        {
            sin_r[r] = std::sin(p.rx[r]);
            cos_r[r] = std::cos(p.rx[r]);
        }

        // k_z deposit positions per polar plane
        std::vector<long> iz0(nz);
        std::vector<double> wz(nz);
        for (std::size_t m = 0; m < nz; ++m)
        {
            const double f = (p.kz[m] - spec.kz.origin) / spec.kz.step;
            iz0[m] = long(std::floor(f));
            wz[m] = f - double(iz0[m]);
        }

        // Each Cartesian k_z plane is owned by one task; deposits follow a fixed order
        parallel_for(nzc, [&](std::size_t plane)
                     {
            std::vector<cplx> acc(nx * ny, cplx{});
            std::vector<double> wacc(nx * ny, 0.0);
            for (std::size_t m = 0; m < nz; ++m)
            {
                double w3;
                if (iz0[m] == long(plane))
                    w3 = 1.0 - wz[m];
                else if (iz0[m] + 1 == long(plane))
                    w3 = wz[m];
                else
                    continue;
                if (w3 == 0.0)
                    continue;
                for (std::size_t a = 0; a < nf; ++a)
                    for (std::size_t b = 0; b < nf; ++b)
                    {
                        const double qt = split_krho_squared(p.kt[a], p.kz[m]), qr = split_krho_squared(p.kr[b], p.kz[m]);
                        if (qt <= 0.0 || qr <= 0.0)
                            continue;
                        const double kt = std::sqrt(qt), kr = std::sqrt(qr);
                        for (std::size_t t = 0; t < nt; ++t)
                            for (std::size_t r = 0; r < nr; ++r)
                            {
                                const double kx = -(kt * sin_t[t] + kr * sin_r[r]);
                                const double ky = kt * cos_t[t] + kr * cos_r[r];
                                const double fx = (kx - spec.kx.origin) / spec.kx.step;
                                const double fy = (ky - spec.ky.origin) / spec.ky.step;
                                const long ix = long(std::floor(fx)), iy = long(std::floor(fy));
                                const double wx = fx - double(ix), wy = fy - double(iy);
                                const cplx v = p.data(a, b, t, r, m);
                                for (int dx = 0; dx < 2; ++dx)
                                    for (int dy = 0; dy < 2; ++dy)
                                    {
                                        const long cx = ix + dx, cy = iy + dy;
                                        if (cx < 0 || cy < 0 || cx >= long(nx) || cy >= long(ny))
                                            continue;
                                        const double w = w3 * (dx ? wx : 1.0 - wx) * (dy ? wy : 1.0 - wy);
                                        const std::size_t c = std::size_t(cx) * ny + std::size_t(cy);
                                        acc[c] += w * v;
                                        wacc[c] += w;
                                    }
                            }
                    }
            }
            for (std::size_t c = 0; c < nx * ny; ++c)
            {
                const std::size_t o = c * nzc + plane;
                out.data[o] = acc[c];
                out.weights[o] = wacc[c];
            } });

        double wmax = 0.0;
        for (double w : out.weights)
            wmax = std::max(wmax, w);
        const double floor = opt.weight_floor * wmax;
        for (std::size_t i = 0; i < out.weights.size(); ++i)
        {
            if (out.weights[i] > floor && out.weights[i] > 0.0)
                out.data[i] /= out.weights[i];
            else
                out.data[i] = cplx{};
        }
        return out;
    }

    // ----- inverse transform -----------------------------------------------

    inline ImageVolume volume_invert(const SpatialSpectrum &spec, const SceneGrid &scene)
    {
        scene.validate();
        const UniformAxis *kax[3] = {&spec.grid.kx, &spec.grid.ky, &spec.grid.kz};
        for (std::size_t a = 0; a < 3; ++a)
        {
            const auto &ka = *kax[a];
            const auto &sa = scene.axis(a);
            const double period = double(ka.count) * ka.step * sa.step;
            if (ka.count < sa.count || std::abs(period - 2.0 * pi) > 1e-9 * 2.0 * pi)
                throw DimensionError("volume_invert: spectral grid inconsistent with scene axis " + std::to_string(a) +
                                     " (need N >= count and N dK d = 2 pi)");
        }
        if (spec.data.shape() != std::array<std::size_t, 3>{kax[0]->count, kax[1]->count, kax[2]->count})
            throw DimensionError("volume_invert: spectrum shape does not match its grid");

        ComplexArray<3> g = spec.data;
        const std::size_t n0 = kax[0]->count, n1 = kax[1]->count, n2 = kax[2]->count;

        // scene-origin phase reference e^{j K.r0}
        std::vector<cplx> p0(n0), p1(n1), p2(n2);
        for (std::size_t i = 0; i < n0; ++i)
            p0[i] = std::polar(1.0, (*kax[0])[i] * scene.x.origin);
        for (std::size_t i = 0; i < n1; ++i)
            p1[i] = std::polar(1.0, (*kax[1])[i] * scene.y.origin);
        for (std::size_t i = 0; i < n2; ++i)
            p2[i] = std::polar(1.0, (*kax[2])[i] * scene.z.origin);
        parallel_for(n0, [&](std::size_t i)
                     {
            for (std::size_t j = 0; j < n1; ++j)
            {
                const cplx pij = p0[i] * p1[j];
                cplx *row = g.data() + (i * n1 + j) * n2;
                for (std::size_t k = 0; k < n2; ++k)
                    row[k] *= pij * p2[k];
            } });

        for (std::size_t a = 0; a < 3; ++a)
            axis_dft(g, a, FftDirection::inverse);

        ImageVolume img(scene);
        const std::size_t cx = scene.x.count, cy = scene.y.count, cz = scene.z.count;
        auto carrier = [&](std::size_t a, std::size_t n)
        { return std::polar(1.0, kax[a]->origin * double(n) * scene.axis(a).step); };
        std::vector<cplx> c1(cy), c2(cz);
        for (std::size_t j = 0; j < cy; ++j)
            c1[j] = carrier(1, j);
        for (std::size_t k = 0; k < cz; ++k)
            c2[k] = carrier(2, k);
        for (std::size_t i = 0; i < cx; ++i)
        {
            const cplx c0 = carrier(0, i);
            for (std::size_t j = 0; j < cy; ++j)
                for (std::size_t k = 0; k < cz; ++k)
                    img.data(i, j, k) = g(i, j, k) * (c0 * c1[j] * c2[k]);
        }
        return img;
    }

    // ----- full pipeline ---------------------------------------------------

    namespace detail
    {
        class StageLog
        {
        public:
            explicit StageLog(const RmaOptions &o) : opt_(o), t0_(std::chrono::steady_clock::now()) {}

            template <std::size_t R>
            void stage(const char *name, const ComplexArray<R> &a, const std::string &extra = {})
            {
                const auto now = std::chrono::steady_clock::now();
                const double dt = std::chrono::duration<double>(now - t0_).count();
                t0_ = now;
                if (opt_.verbose && opt_.log)
                {
                    *opt_.log << "rma." << name << ".seconds = " << dt << '\n'
                              << "rma." << name << ".energy = " << energy(a.values()) << '\n';
                    if (!extra.empty())
                        *opt_.log << extra;
                }
            }

        private:
            const RmaOptions &opt_;
            std::chrono::steady_clock::time_point t0_;
        };
    }

    inline ImageVolume reconstruct(const EchoCube &echo, double radius, const SceneGrid &scene, const RmaOptions &opt = {})
    {
        scene.validate();
        detail::StageLog log(opt);
        const bool dump = !opt.dump_dir.empty();
        if (dump)
            std::filesystem::create_directories(opt.dump_dir);

        ScanSpectrum s = scan_axis_ft(echo);
        log.stage("scan_ft", s.data);
        if (dump)
            save_array<4>(opt.dump_dir / "scan_spectrum.bin", s.data,
                          {AxisHeader{s.freqs.axis(), "frequency_hz"}, AxisHeader{s.tx, "theta_tx"}, AxisHeader{s.rx, "theta_rx"},
                           AxisHeader{s.kz, "k_z"}});

        IncreasedSpectrum inc = dimension_increase(s);
        log.stage("dimension_increase", inc.data);
        if (dump)
            save_array<5>(opt.dump_dir / "increased_spectrum.bin", inc.data,
                          {AxisHeader{inc.kt, "k_t"}, AxisHeader{inc.kr, "k_r"}, AxisHeader{inc.tx, "theta_tx"},
                           AxisHeader{inc.rx, "theta_rx"}, AxisHeader{inc.kz, "k_z"}});

        PolarSpectrum pol = angular_deconvolve(inc, radius, opt);
        inc = IncreasedSpectrum{};
        log.stage("angular_deconvolve", pol.data);
        if (dump)
            save_array<5>(opt.dump_dir / "polar_spectrum.bin", pol.data,
                          {AxisHeader{pol.kt, "k_t"}, AxisHeader{pol.kr, "k_r"}, AxisHeader{pol.tx, "phi_tx"},
                           AxisHeader{pol.rx, "phi_rx"}, AxisHeader{pol.kz, "k_z"}});

        const CartesianGridSpec grid = default_cartesian_grid(pol, scene);
        SpatialSpectrum sp = stolt_grid(pol, grid, opt);
        pol = PolarSpectrum{};
        {
            std::ostringstream band;
            band << "rma.band.kx = " << sp.band.kx_min << ' ' << sp.band.kx_max << '\n'
                 << "rma.band.ky = " << sp.band.ky_min << ' ' << sp.band.ky_max << '\n'
                 << "rma.band.kz = " << sp.band.kz_min << ' ' << sp.band.kz_max << '\n';
            log.stage("stolt_grid", sp.data, band.str());
        }
        if (dump)
            save_array<3>(opt.dump_dir / "spatial_spectrum.bin", sp.data,
                          {AxisHeader{grid.kx, "k_x"}, AxisHeader{grid.ky, "k_y"}, AxisHeader{grid.kz, "k_z"}});

        ImageVolume img = volume_invert(sp, scene);
        log.stage("volume_invert", img.data);
        return img;
    }
}
