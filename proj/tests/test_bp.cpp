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

#include <catch2/catch_amalgamated.hpp>

#include <arcmimo/bp.hpp>
#include <arcmimo/config.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace arcmimo;
using Catch::Approx;

namespace
{
    const ArrayGeometry table2 = build_geometry(ArrayLayout{});
    const FrequencyGrid band(30e9, 35e9, 25);

    std::vector<Vec3> cube(const Vec3 &c, double h, int n)
    {
        std::vector<Vec3> p;
        for (int i = -n; i <= n; ++i)
            for (int j = -n; j <= n; ++j)
                for (int k = -n; k <= n; ++k)
                    p.push_back({c.x + i * h, c.y + j * h, c.z + k * h});
        return p;
    }

    std::size_t argmax_abs(const std::vector<cplx> &v)
    {
        std::size_t b = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (std::abs(v[i]) > std::abs(v[b]))
                b = i;
        return b;
    }
}

TEST_CASE("BP - Peak equals the coherent sample count")
{
    const auto e = simulate_echo(table2, band, std::vector<PointTarget>{{{0.0, 0.0, 0.0}, 1.0}});
    const auto pts = cube({0.0, 0.0, 0.0}, 0.003, 2);
    const auto v = bp_points(e, 1.0, pts);
    const std::size_t centre = pts.size() / 2;
    CHECK(argmax_abs(v) == centre);
    CHECK(std::abs(v[centre] - cplx(double(e.data.size()))) < 1e-9 * double(e.data.size()));
}

TEST_CASE("BP - Zero echo gives a zero image")
{
    EchoCube e(band, table2);
    const auto pts = cube({0.01, -0.02, 0.0}, 0.004, 1);
    for (const auto &v : bp_points(e, 1.0, pts))
        CHECK(v == cplx{});
}

TEST_CASE("BP - Equal targets give equal peaks")
{
    // separation well beyond twice the cross-range resolution
    const Vec3 a{-0.02, 0.0, 0.0}, b{0.03, 0.03, 0.012};
    const auto e = simulate_echo(table2, band, std::vector<PointTarget>{{a, 1.0}, {b, 1.0}});
    const std::vector<Vec3> pts{a, b};
    const auto v = bp_points(e, 1.0, pts);
    CHECK(std::abs(v[0]) == Approx(std::abs(v[1])).epsilon(0.05));
}

TEST_CASE("BP - Adjoint of the forward model")
{
    CHECK(test_oracles::adjoint_error() < 1e-9);
}

TEST_CASE("BP - Monostatic on-axis peak")
{
    const UniformAxis ang = centered_axis(61, 0.0066);
    const UniformAxis z = centered_axis(21, 0.01);
    const auto e = simulate_monostatic(1.0, ang, z, band, std::vector<PointTarget>{{{0.0, 0.0, 0.0}, 1.0}});
    const auto pts = cube({0.0, 0.0, 0.0}, 0.003, 2);
    const auto v = bp_points_monostatic(e, 1.0, pts);
    CHECK(argmax_abs(v) == pts.size() / 2);
    CHECK(std::abs(v[pts.size() / 2]) == Approx(double(e.data.size())).epsilon(1e-12));
}

TEST_CASE("BP - Single frequency loses range focus")
{
    const FrequencyGrid one(32.5e9, 32.5e9, 1);
    const auto e = simulate_echo(table2, one, std::vector<PointTarget>{{{0.0, 0.0, 0.0}, 1.0}});
    std::vector<Vec3> line;
    for (int j = -10; j <= 10; ++j)
        line.push_back({0.0, 0.002 * j, 0.0});
    const auto v = bp_points(e, 1.0, line);
    double lo = INFINITY, hi = 0.0;
    for (const auto &x : v)
    {
        lo = std::min(lo, std::abs(x));
        hi = std::max(hi, std::abs(x));
    }
    CHECK(lo >= 0.8 * hi);
}

TEST_CASE("BP - Translating target and scan together translates the image")
{
    ArrayLayout l;
    l.scan_count = 11;
    auto g = build_geometry(l);
    const Vec3 t{0.01, 0.02, -0.004};
    const auto pts = cube(t, 0.005, 1);
    const auto v0 = bp_points(simulate_echo(g, band, std::vector<PointTarget>{{t, 1.0}}), 1.0, pts);

    const double dz = 0.003;
    g.z.origin += dz;
    std::vector<Vec3> moved = pts;
    for (auto &p : moved)
        p.z += dz;
    const auto v1 = bp_points(simulate_echo(g, band, std::vector<PointTarget>{{{t.x, t.y, t.z + dz}, 1.0}}), 1.0, moved);
    CHECK(relative_l2(v1, v0) < 1e-9);
}

TEST_CASE("BP - Range-decay weighting")
{
    ArrayGeometry g;
    g.tx = {1, -0.1, 1.0};
    g.rx = {1, 0.05, 1.0};
    g.z = {1, 0.02, 1.0};
    const FrequencyGrid f(31e9, 31e9, 1);
    EchoCube e(f, g);
    e.data[0] = cplx(0.7, -0.3);

    const Vec3 p{0.02, 0.01, -0.01};
    const double a = distance(p, antenna_position(g.tx[0], g.z[0], 1.0));
    const double b = distance(p, antenna_position(g.rx[0], g.z[0], 1.0));
    const cplx base = e.data[0] * std::polar(1.0, f.wavenumber(0) * (a + b));

    BpOptions o;
    o.range_decay = true;
    const std::vector<Vec3> pts{p};
    CHECK(std::abs(bp_points(e, 1.0, pts)[0] - base) < 1e-12);
    CHECK(std::abs(bp_points(e, 1.0, pts, o)[0] - base / (a * b)) < 1e-12);
}

TEST_CASE("BP - Full reconstruction matches point evaluation")
{
    ArrayLayout l;
    l.tx_count = 2;
    l.rx_count = 5;
    l.scan_count = 4;
    const auto g = build_geometry(l);
    const auto e = simulate_echo(g, FrequencyGrid(30e9, 35e9, 4), std::vector<PointTarget>{{{0.003, 0.0, 0.0}, 1.0}});
    SceneGrid s;
    s.x = {4, -0.006, 0.003};
    s.y = {3, -0.006, 0.006};
    s.z = {2, 0.0, 0.003};
    const auto img = bp_reconstruct(e, 1.0, s);
    const std::vector<Vec3> p{s.voxel(3, 1, 1)};
    CHECK(img.data(3, 1, 1) == bp_points(e, 1.0, p)[0]);
}
