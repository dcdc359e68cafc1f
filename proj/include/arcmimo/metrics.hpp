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
#include "geometry.hpp"

#include <limits>
#include <optional>

namespace arcmimo
{
    // Half-power level used for every main-lobe width
    inline constexpr double half_power_db = -3.0102999566398120;
    inline constexpr double mainlobe_boundary_db = -6.0;
    inline constexpr double no_sidelobe = -std::numeric_limits<double>::infinity();

    struct PeakLocation
    {
        std::array<std::size_t, 3> index{};
        std::array<double, 3> offset{};  // sub-voxel, in voxels
        Vec3 position;
        double magnitude = 0.0;
    };

    struct PeakReport
    {
        PeakLocation peak;
        std::array<double, 3> width{};        // meters, NaN if the lobe leaves the grid
        std::array<double, 3> sidelobe_db{};  // per-axis cut
        double sidelobe_db_max = no_sidelobe;
    };

    // ----- 1-D cuts ----------------------------------------------------------

    inline std::size_t argmax(std::span<const double> v)
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > v[best])
                best = i;
        return best;
    }

    // 3-point parabola on log-magnitude; offset in samples, clamped to [-0.5, 0.5]
    inline double parabolic_offset(double left, double centre, double right)
    {
        if (!(left > 0.0) || !(centre > 0.0) || !(right > 0.0))
            return 0.0;
        const double a = std::log(left), b = std::log(centre), c = std::log(right);
        const double den = a - 2.0 * b + c;
        if (!(den < 0.0))
            return 0.0;
        return std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
    }

    inline double to_db(double m, double ref) { return m > 0.0 ? 20.0 * std::log10(m / ref) : -std::numeric_limits<double>::infinity(); }

    // Full width at half power around `peak`, linear interpolation in dB
    inline double mainlobe_width(std::span<const double> mag, std::size_t peak, double step)
    {
        if (peak >= mag.size() || !(mag[peak] > 0.0))
            throw std::invalid_argument("mainlobe_width: no peak");
        const double ref = mag[peak];
        auto crossing = [&](int dir) -> double
        {
            long i = long(peak);
            while (true)
            {
                const long j = i + dir;
                if (j < 0 || j >= long(mag.size()))
                    throw std::range_error("mainlobe_width: main lobe wider than the grid");
                const double dj = to_db(mag[std::size_t(j)], ref);
                if (dj <= half_power_db)
                {
                    const double di = to_db(mag[std::size_t(i)], ref);
                    // a zero sample has no dB value; fall back to linear magnitude
                    const double frac = std::isinf(dj) ? 1.0 - std::pow(10.0, (half_power_db - di) / 20.0)
                                                       : (di - half_power_db) / (di - dj);
                    return (double(i) + dir * frac) - double(peak);
                }
                i = j;
            }
        };
        return (crossing(1) - crossing(-1)) * step;
    }

    // Highest local maximum outside the main lobe, in dB re peak; -inf if none
    inline double sidelobe_level(std::span<const double> mag, std::size_t peak)
    {
        if (peak >= mag.size() || !(mag[peak] > 0.0))
            throw std::invalid_argument("sidelobe_level: no peak");
        const double ref = mag[peak];
        const long n = long(mag.size());

        // main lobe ends at the first local minimum below -6 dB on each side
        auto boundary = [&](int dir) -> std::optional<long>
        {
            for (long i = long(peak) + dir; i > 0 && i < n - 1; i += dir)
            {
                const double m = mag[std::size_t(i)];
                if (m <= mag[std::size_t(i - dir)] && m <= mag[std::size_t(i + dir)] && to_db(m, ref) < mainlobe_boundary_db)
                    return i;
            }
            return std::nullopt;
        };
        const auto lo = boundary(-1), hi = boundary(1);

        double best = no_sidelobe;
        auto scan = [&](long from, long to)
        {
            for (long i = std::max(from, 1L); i <= std::min(to, n - 2); ++i)
            {
                const double m = mag[std::size_t(i)];
                if (m >= mag[std::size_t(i - 1)] && m >= mag[std::size_t(i + 1)] && m > 0.0)
                    best = std::max(best, to_db(m, ref));
            }
        };
        if (hi)
            scan(*hi + 1, n - 1);
        if (lo)
            scan(0, *lo - 1);
        return best;
    }

    // ----- volumes -----------------------------------------------------------

    inline std::vector<double> magnitude(const ImageVolume &img)
    {
        std::vector<double> m(img.data.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] = std::abs(img.data[i]);
        return m;
    }

    inline std::vector<double> axis_cut(const ImageVolume &img, std::size_t axis, const std::array<std::size_t, 3> &through)
    {
        const auto &s = img.data.shape();
        std::vector<double> cut(s[axis]);
        auto idx = through;
        for (std::size_t i = 0; i < s[axis]; ++i)
        {
            idx[axis] = i;
            cut[i] = std::abs(img.data(idx[0], idx[1], idx[2]));
        }
        return cut;
    }

    inline PeakLocation refine_peak(const ImageVolume &img, const std::array<std::size_t, 3> &idx)
    {
        PeakLocation p;
        p.index = idx;
        p.magnitude = std::abs(img.data(idx[0], idx[1], idx[2]));
        double pos[3];
        for (std::size_t a = 0; a < 3; ++a)
        {
            const auto cut = axis_cut(img, a, idx);
            const std::size_t i = idx[a];
            p.offset[a] = (i > 0 && i + 1 < cut.size()) ? parabolic_offset(cut[i - 1], cut[i], cut[i + 1]) : 0.0;
            const auto &ax = img.scene.axis(a);
            pos[a] = ax.origin + (double(i) + p.offset[a]) * ax.step;
        }
        p.position = {pos[0], pos[1], pos[2]};
        return p;
    }

    // Global |.| argmax; ties resolve to the lowest linear index
    inline PeakLocation peak_location(const ImageVolume &img)
    {
        std::size_t best = 0;
        double bm = -1.0;
        for (std::size_t i = 0; i < img.data.size(); ++i)
        {
            const double m = std::abs(img.data[i]);
            if (m > bm)
            {
                bm = m;
                best = i;
            }
        }
        if (!(bm > 0.0))
            throw std::invalid_argument("peak_location: all-zero image");
        const auto &s = img.data.shape();
        return refine_peak(img, {best / (s[1] * s[2]), (best / s[2]) % s[1], best % s[2]});
    }

    // Largest voxel within +-radius voxels of `near`
    inline PeakLocation local_peak(const ImageVolume &img, const std::array<std::size_t, 3> &near, std::size_t radius)
    {
        const auto &s = img.data.shape();
        std::array<std::size_t, 3> lo, hi, best = near;
        for (std::size_t a = 0; a < 3; ++a)
        {
            lo[a] = near[a] > radius ? near[a] - radius : 0;
            hi[a] = std::min(s[a] - 1, near[a] + radius);
        }
        double bm = -1.0;
        for (std::size_t i = lo[0]; i <= hi[0]; ++i)
            for (std::size_t j = lo[1]; j <= hi[1]; ++j)
                for (std::size_t k = lo[2]; k <= hi[2]; ++k)
                {
                    const double m = std::abs(img.data(i, j, k));
                    if (m > bm)
                    {
                        bm = m;
                        best = {i, j, k};
                    }
                }
        if (!(bm > 0.0))
            throw std::invalid_argument("local_peak: all-zero neighbourhood");
        return refine_peak(img, best);
    }

    inline double mainlobe_width(const ImageVolume &img, std::size_t axis, const std::array<std::size_t, 3> &through)
    {
        const auto cut = axis_cut(img, axis, through);
        return mainlobe_width(cut, through[axis], img.scene.axis(axis).step);
    }

    inline double sidelobe_level(const ImageVolume &img, std::size_t axis, const std::array<std::size_t, 3> &through)
    {
        const auto cut = axis_cut(img, axis, through);
        return sidelobe_level(cut, through[axis]);
    }

    inline PeakReport peak_report(const ImageVolume &img, const PeakLocation &peak)
    {
        PeakReport r;
        r.peak = peak;
        for (std::size_t a = 0; a < 3; ++a)
        {
            try
            {
                r.width[a] = mainlobe_width(img, a, peak.index);
            }
            catch (const std::range_error &)
            {
                r.width[a] = std::numeric_limits<double>::quiet_NaN();
            }
            r.sidelobe_db[a] = sidelobe_level(img, a, peak.index);
            r.sidelobe_db_max = std::max(r.sidelobe_db_max, r.sidelobe_db[a]);
        }
        return r;
    }

    inline std::array<std::size_t, 3> nearest_voxel(const SceneGrid &scene, const Vec3 &p)
    {
        auto near = [](const UniformAxis &ax, double v)
        {
            const double f = std::round((v - ax.origin) / ax.step);
            return std::size_t(std::clamp(f, 0.0, double(ax.count - 1)));
        };
        return {near(scene.x, p.x), near(scene.y, p.y), near(scene.z, p.z)};
    }

    // || |a|/max|a| - |b|/max|b| || / || |b|/max|b| ||
    inline double image_nrmse(const ImageVolume &a, const ImageVolume &b)
    {
        if (a.data.shape() != b.data.shape() || !(a.scene == b.scene))
            throw DimensionError("image_nrmse: grid mismatch");
        double ma = 0.0, mb = 0.0;
        for (std::size_t i = 0; i < a.data.size(); ++i)
        {
            ma = std::max(ma, std::abs(a.data[i]));
            mb = std::max(mb, std::abs(b.data[i]));
        }
        if (!(ma > 0.0) || !(mb > 0.0))
            throw std::invalid_argument("image_nrmse: all-zero image");
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.data.size(); ++i)
        {
            const double u = std::abs(a.data[i]) / ma, v = std::abs(b.data[i]) / mb;
            num += (u - v) * (u - v);
            den += v * v;
        }
        return std::sqrt(num / den);
    }
}
