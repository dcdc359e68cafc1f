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

#include <arcmimo/metrics.hpp>

using namespace arcmimo;
using Catch::Approx;

namespace
{
    SceneGrid grid9()
    {
        SceneGrid s;
        s.x = {9, -0.012, 0.003};
        s.y = {9, -0.024, 0.006};
        s.z = {9, -0.012, 0.003};
        return s;
    }

    std::vector<double> sinc_cut(double k, double step, std::size_t n)
    {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double u = 0.5 * k * (double(i) - double(n / 2)) * step;
            v[i] = u == 0.0 ? 1.0 : std::abs(std::sin(u) / u);
        }
        return v;
    }
}

TEST_CASE("Metrics - Impulse peak")
{
    ImageVolume img(grid9());
    img.data(6, 2, 4) = cplx(0.0, -3.0);
    const auto p = peak_location(img);
    CHECK(p.index == std::array<std::size_t, 3>{6, 2, 4});
    CHECK(p.offset == std::array<double, 3>{0.0, 0.0, 0.0});
    CHECK(p.magnitude == 3.0);
    CHECK(p.position.x == Approx(0.006));
    CHECK(p.position.y == Approx(-0.012));
    CHECK(p.position.z == Approx(0.0).margin(1e-15));
}

TEST_CASE("Metrics - Sub-voxel refinement of a Gaussian")
{
    const auto s = grid9();
    ImageVolume img(s);
    const double c[3] = {4.3, 3.8, 5.0};
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            for (std::size_t k = 0; k < 9; ++k)
            {
                const double d = std::pow(i - c[0], 2) + std::pow(j - c[1], 2) + std::pow(k - c[2], 2);
                img.data(i, j, k) = std::exp(-d / 4.0);
            }
    const auto p = peak_location(img);
    CHECK(p.index == std::array<std::size_t, 3>{4, 4, 5});
    CHECK(p.offset[0] == Approx(0.3).margin(0.05));
    CHECK(p.offset[1] == Approx(-0.2).margin(0.05));
    CHECK(p.offset[2] == Approx(0.0).margin(1e-12));
    CHECK(p.position.x == Approx(s.x.origin + 4.3 * s.x.step).margin(0.05 * s.x.step));
}

TEST_CASE("Metrics - Ties resolve to the lowest index")
{
    ImageVolume img(grid9());
    img.data(7, 1, 1) = 2.0;
    img.data(2, 5, 5) = 2.0;
    img.data(2, 5, 6) = 2.0;
    CHECK(peak_location(img).index == std::array<std::size_t, 3>{2, 5, 5});
    CHECK_THROWS(peak_location(ImageVolume(grid9())));
}

TEST_CASE("Metrics - Sinc main lobe and sidelobe")
{
    const double k = 100.0, step = 1e-4;
    const auto cut = sinc_cut(k, step, 6001);
    CHECK(mainlobe_width(cut, 3000, step) == Approx(0.8859 * 2.0 * pi / k).epsilon(1e-3));
    CHECK(sidelobe_level(cut, 3000) == Approx(-13.26).margin(0.01));
}

TEST_CASE("Metrics - Gaussian has no sidelobe")
{
    std::vector<double> g(201);
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = std::exp(-std::pow((double(i) - 100.0) / 15.0, 2));
    CHECK(sidelobe_level(g, 100) == no_sidelobe);
    // -3.01 dB at exp(-u^2) = 2^{-1/2}
    CHECK(mainlobe_width(g, 100, 1.0) == Approx(2.0 * 15.0 * std::sqrt(0.5 * std::log(2.0))).epsilon(1e-3));
}

TEST_CASE("Metrics - Main lobe wider than the grid")
{
    const std::vector<double> flat{0.9, 1.0, 0.95};
    CHECK_THROWS_AS(mainlobe_width(flat, 1, 1.0), std::range_error);
    CHECK_THROWS(mainlobe_width(std::vector<double>{0.0, 0.0}, 0, 1.0));
}

TEST_CASE("Metrics - Scale invariance")
{
    const auto cut = sinc_cut(80.0, 2e-4, 1001);
    std::vector<double> scaled(cut);
    for (auto &v : scaled)
        v *= 37.5;
    CHECK(mainlobe_width(scaled, 500, 2e-4) == Approx(mainlobe_width(cut, 500, 2e-4)).epsilon(1e-12));
    CHECK(sidelobe_level(scaled, 500) == Approx(sidelobe_level(cut, 500)).epsilon(1e-12));
}

TEST_CASE("Metrics - Narrower spectral support widens the main lobe")
{
    const double step = 1e-4;
    double prev = 0.0;
    for (double k : {200.0, 150.0, 100.0, 60.0})
    {
        const double w = mainlobe_width(sinc_cut(k, step, 8001), 4000, step);
        CHECK(w > prev);
        prev = w;
    }
}

TEST_CASE("Metrics - Normalised image error")
{
    const auto s = grid9();
    ImageVolume a(s), b(s);
    for (std::size_t i = 0; i < a.data.size(); ++i)
        a.data[i] = cplx(std::sin(0.1 * double(i)), 0.3);
    CHECK(image_nrmse(a, a) == 0.0);
    for (std::size_t i = 0; i < a.data.size(); ++i)
        b.data[i] = a.data[i] * cplx(0.0, 4.0);
    CHECK(image_nrmse(b, a) < 1e-15);

    SceneGrid other = s;
    other.z.count = 8;
    CHECK_THROWS_AS(image_nrmse(a, ImageVolume(other)), DimensionError);
    CHECK_THROWS(image_nrmse(a, ImageVolume(s)));
}

TEST_CASE("Metrics - Peak report on a separable volume")
{
    const auto s = grid9();
    ImageVolume img(s);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 9; ++j)
            for (std::size_t k = 0; k < 9; ++k)
                img.data(i, j, k) = std::exp(-(std::pow(double(i) - 4.0, 2) + std::pow(double(j) - 4.0, 2) +
                                              std::pow(double(k) - 4.0, 2)) / 2.0);
    const auto r = peak_report(img, peak_location(img));
    CHECK(r.width[0] == Approx(r.width[2]));
    CHECK(r.width[1] == Approx(2.0 * r.width[0]));
    CHECK(r.sidelobe_db_max == no_sidelobe);
    CHECK(nearest_voxel(s, {0.0011, 0.0029, -0.1}) == std::array<std::size_t, 3>{4, 4, 0});
}
