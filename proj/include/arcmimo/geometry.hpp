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

namespace arcmimo
{
    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        double norm() const { return std::sqrt(x * x + y * y + z * z); }
        bool operator==(const Vec3 &) const = default;
    };

    inline double distance(const Vec3 &a, const Vec3 &b) { return (a - b).norm(); }

    struct PointTarget
    {
        Vec3 position;
        cplx reflectivity{1.0, 0.0};
    };

    // Array description as written in a scenario (arc lengths in meters)
    struct ArrayLayout
    {
        double radius = 1.0;
        std::size_t tx_count = 5;
        double tx_arc_interval = 0.099;
        std::size_t rx_count = 41;
        double rx_arc_interval = 0.0099;
        std::size_t scan_count = 51;
        double scan_step = 0.01;
    };

    struct ArrayGeometry
    {
        double radius = 1.0;
        UniformAxis tx;  // radians
        UniformAxis rx;  // radians
        UniformAxis z;   // meters

        std::vector<double> tx_angles() const { return tx.values(); }
        std::vector<double> rx_angles() const { return rx.values(); }
        std::vector<double> z_positions() const { return z.values(); }

        void validate() const
        {
            if (!(radius > 0.0) || !std::isfinite(radius))
                throw std::invalid_argument("array radius must be positive");
            for (const auto *ax : {&tx, &rx})
            {
                if (ax->count == 0)
                    throw std::invalid_argument("empty angle list");
                if (ax->count > 1 && !(ax->step > 0.0))
                    throw std::invalid_argument("angle list must be strictly increasing");
                if (!(ax->origin > -pi / 2) || !(ax->last() < pi / 2))
                    throw std::invalid_argument("arc exceeds (-pi/2, pi/2)");
            }
            if (z.count == 0 || (z.count > 1 && !(z.step > 0.0)))
                throw std::invalid_argument("scan positions must be uniform and increasing");
        }

        bool operator==(const ArrayGeometry &) const = default;
    };

    struct SceneGrid
    {
        UniformAxis x{64, -0.096, 0.003};
        UniformAxis y{32, -0.096, 0.006};
        UniformAxis z{64, -0.096, 0.003};

        const UniformAxis &axis(std::size_t a) const { return a == 0 ? x : (a == 1 ? y : z); }
        std::size_t voxel_count() const { return x.count * y.count * z.count; }
        Vec3 voxel(std::size_t i, std::size_t j, std::size_t k) const { return {x[i], y[j], z[k]}; }
        Vec3 center() const { return {0.5 * (x.origin + x.last()), 0.5 * (y.origin + y.last()), 0.5 * (z.origin + z.last())}; }

        bool contains(const Vec3 &p) const
        {
            auto in = [](const UniformAxis &a, double v)
            { return v >= a.origin - 0.5 * a.step && v <= a.last() + 0.5 * a.step; };
            return in(x, p.x) && in(y, p.y) && in(z, p.z);
        }

        void validate() const
        {
            for (std::size_t a = 0; a < 3; ++a)
            {
                const auto &ax = axis(a);
                if (ax.count < 1 || !(ax.step > 0.0) || !std::isfinite(ax.origin))
                    throw std::invalid_argument("scene grid axes need count >= 1 and step > 0");
            }
            if (!contains({0.0, 0.0, z.origin}))
                throw std::invalid_argument("scene grid must contain the cylinder axis (x = 0, y = 0)");
        }

        bool operator==(const SceneGrid &) const = default;
    };

    inline ArrayGeometry build_geometry(const ArrayLayout &layout)
    {
        if (!(layout.radius > 0.0))
            throw std::invalid_argument("non-positive array radius");
        if (layout.tx_count < 2 || layout.rx_count < 2)
            throw std::invalid_argument("transmit and receive arrays need at least two elements");
        if (!(layout.tx_arc_interval > 0.0) || !(layout.rx_arc_interval > 0.0))
            throw std::invalid_argument("arc intervals must be positive");
        if (layout.scan_count < 1 || !(layout.scan_step > 0.0))
            throw std::invalid_argument("scan axis needs count >= 1 and step > 0");

        ArrayGeometry g;
        g.radius = layout.radius;
        g.tx = centered_axis(layout.tx_count, layout.tx_arc_interval / layout.radius);
        g.rx = centered_axis(layout.rx_count, layout.rx_arc_interval / layout.radius);
        g.z = centered_axis(layout.scan_count, layout.scan_step);
        g.validate();
        return g;
    }

    inline Vec3 antenna_position(double angle, double z, double radius)
    {
        return {radius * std::sin(angle), -radius * std::cos(angle), z};
    }

    struct ApertureAngles
    {
        double theta_h = 0.0;
        double theta_z = 0.0;
    };

    inline ApertureAngles aperture_angles(const ArrayGeometry &geom, const SceneGrid &grid, double beamwidth)
    {
        const Vec3 c = grid.center();
        const double range = std::hypot(c.x, c.y + geom.radius);
        const double scan_length = double(geom.z.count - 1) * geom.z.step;
        ApertureAngles a;
        a.theta_h = double(geom.rx.count - 1) * geom.rx.step;
        a.theta_z = std::min(beamwidth, 2.0 * std::atan(scan_length / (2.0 * range)));
        return a;
    }

    // Complex reflectivity g(x, y, z) indexed [x][y][z]
    struct ImageVolume
    {
        SceneGrid scene;
        ComplexArray<3> data;

        ImageVolume() = default;
        explicit ImageVolume(const SceneGrid &s) : scene(s), data({s.x.count, s.y.count, s.z.count}) {}

        bool operator==(const ImageVolume &) const = default;
    };
}
