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

#include <arcmimo/design.hpp>

#include "support.hpp"

using namespace arcmimo;
using Catch::Approx;

namespace
{
    const Violation *find(const DesignReport &r, const std::string &rule)
    {
        for (const auto &v : r.violations)
            if (v.rule == rule)
                return &v;
        return nullptr;
    }
}

TEST_CASE("Design - Receive angular spacing bound")
{
    CHECK(max_rx_spacing(8.571e-3, 0.5) == Approx(0.017142).epsilon(1e-12));
    CHECK_THROWS(max_rx_spacing(0.0, 0.5));
    CHECK_THROWS(max_rx_spacing(8.571e-3, -1.0));
}

TEST_CASE("Design - Scan step bound")
{
    CHECK(max_scan_step(8.571e-3, pi) == Approx(8.571e-3 / 4.0).epsilon(1e-14));
    CHECK(max_scan_step(8.571e-3, 0.4899) == Approx(8.836e-3).epsilon(5e-4));
    CHECK(max_scan_step(8.571e-3, 1e-9) == scan_step_cap);
    CHECK_THROWS(max_scan_step(8.571e-3, 0.0));
    CHECK_THROWS(max_scan_step(8.571e-3, 3.5));
    CHECK_THROWS(max_scan_step(-1.0, 0.3));
}

TEST_CASE("Design - Resolution formulas")
{
    const auto r = resolutions(9.231e-3, 5e9, 0.396, 0.396);
    CHECK(r.dy == Approx(0.0299792458).epsilon(1e-14));
    CHECK(r.dx == Approx(11.73e-3).epsilon(5e-4));
    CHECK(r.dz == r.dx);

    const auto z = resolutions(9.231e-3, 0.0, 0.0, -1.0);
    CHECK(std::isinf(z.dx));
    CHECK(std::isinf(z.dy));
    CHECK(std::isinf(z.dz));
}

TEST_CASE("Design - Monotonicity")
{
    for (double lam : {6e-3, 8.571e-3, 1e-2})
    {
        double prev_dx = INFINITY, prev_step = INFINITY;
        for (int i = 1; i <= 60; ++i)
        {
            const double th = pi * i / 60.0;
            const auto r = resolutions(lam, 5e9, th, th);
            CHECK(r.dx < prev_dx);
            const double s = max_scan_step(lam, th);
            CHECK(s <= prev_step);
            prev_dx = r.dx;
            prev_step = s;
        }
    }
    double prev = INFINITY;
    for (double b = 1e9; b <= 2e10; b += 1e9)
    {
        const double dy = resolutions(9e-3, b, 0.4, 0.4).dy;
        CHECK(dy < prev);
        prev = dy;
    }
    // halving lambda_c halves delta_x
    CHECK(resolutions(4.5e-3, 5e9, 0.4, 0.4).dx == Approx(0.5 * resolutions(9e-3, 5e9, 0.4, 0.4).dx).epsilon(1e-14));
}

TEST_CASE("Design - Bundled point-target array")
{
    auto cfg = test_support::table2_config();
    const auto r = validate_config(cfg);
    CHECK(r.lambda_min == Approx(speed_of_light / 35e9));
    CHECK(r.extent == Approx(0.192));
    CHECK(r.max_rx_angular_step == Approx(r.lambda_min / 0.192));
    CHECK(find(r, "rx_spacing") == nullptr);
    CHECK(find(r, "transmit_endpoints") == nullptr);
    CHECK(r.theta_h == Approx(0.396).epsilon(1e-12));

    // 10 mm scan pitch exceeds the bound set by the scan aperture
    const auto *v = find(r, "scan_step");
    REQUIRE(v != nullptr);
    CHECK(v->actual == 0.01);
    CHECK(v->bound == Approx(r.lambda_min / (4.0 * std::sin(0.5 * r.theta_z))));
    CHECK(v->bound < 0.01);

    // a 0.5 m scene still satisfies the receive spacing rule
    cfg.scene.x = {167, -0.249, 0.003};
    const auto wide = validate_config(cfg);
    CHECK(wide.max_rx_angular_step == Approx(8.565e-3 / 0.501).epsilon(1e-3));
    CHECK(find(wide, "rx_spacing") == nullptr);
}

TEST_CASE("Design - Rule violations")
{
    auto cfg = test_support::table2_config();
    cfg.array.scan_step = 0.002;
    CHECK(validate_config(cfg).ok());

    auto one = cfg;
    one.array.tx_count = 1;
    CHECK(find(validate_config(one), "transmit_endpoints") != nullptr);

    auto narrow = cfg;
    narrow.array.tx_arc_interval = 0.05;
    CHECK(find(validate_config(narrow), "transmit_endpoints") != nullptr);

    auto coarse = cfg;
    coarse.array.scan_step = 0.02;
    const auto *v = find(validate_config(coarse), "scan_step");
    REQUIRE(v != nullptr);
    CHECK(v->actual == 0.02);

    auto sparse = cfg;
    sparse.array.rx_arc_interval = 0.06;
    sparse.array.rx_count = 7;
    sparse.array.tx_arc_interval = 0.18;
    sparse.array.tx_count = 3;
    CHECK(find(validate_config(sparse), "rx_spacing") != nullptr);

    auto blind = cfg;
    blind.options.beamwidth = 0.0;
    const auto r = validate_config(blind);
    CHECK(find(r, "scan_aperture") != nullptr);
    CHECK(r.max_scan_step == scan_step_cap);
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("Design - Report formats")
{
    const auto r = validate_config(test_support::table2_config());
    const std::string kv = r.to_kv();
    CHECK(kv.find("design.violations = 1\n") != std::string::npos);
    CHECK(kv.find("design.violation.scan_step = 0.01 ") != std::string::npos);
    CHECK(kv.find("design.dy_m = 0.0299792458\n") != std::string::npos);

    const std::string text = r.to_text();
    CHECK(text.find("VIOLATION scan_step") != std::string::npos);

    auto ok = test_support::table2_config();
    ok.array.scan_step = 0.002;
    CHECK(validate_config(ok).to_text().find("all rules satisfied") != std::string::npos);
}
