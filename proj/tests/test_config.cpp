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

#include <arcmimo/config.hpp>

#include "support.hpp"

using namespace arcmimo;

namespace
{
    const std::filesystem::path scenarios = ARCMIMO_SCENARIO_DIR;

    std::string error_of(const std::string &text)
    {
        try
        {
            parse_config(text);
        }
        catch (const ConfigError &e)
        {
            return e.what();
        }
        return {};
    }
}

TEST_CASE("Config - Bundled point-target scenario")
{
    const auto c = load_config(scenarios / "table2.cfg");
    CHECK(c.band.f_start == 30e9);
    CHECK(c.band.f_stop == 35e9);
    CHECK(c.band.count == 25);
    CHECK(c.array.radius == 1.0);
    CHECK(c.array.tx_count == 5);
    CHECK(c.array.tx_arc_interval == 0.099);
    CHECK(c.array.rx_count == 41);
    CHECK(c.array.rx_arc_interval == 0.0099);
    CHECK(c.array.scan_count == 51);
    CHECK(c.array.scan_step == 0.01);
    REQUIRE(c.targets.size() == 3);
    CHECK(c.targets[1].position.x == 0.04);
    CHECK(c.targets[2].position.z == 0.02);
    CHECK(c.targets[0].reflectivity == cplx(1.0, 0.0));
    CHECK(c.scene == SceneGrid{});
    CHECK(c.output.echo == "table2_echo.bin");
    CHECK_FALSE(c.convolution);
    CHECK_FALSE(c.nt_study);

    const auto g = build_geometry(c);
    CHECK(g.tx.count == 5);
    CHECK(g.rx.last() == Catch::Approx(0.198));
}

TEST_CASE("Config - Study scenarios")
{
    const auto conv = load_config(scenarios / "table1_conv.cfg");
    REQUIRE(conv.convolution);
    CHECK(conv.convolution->theta_tx_deg == -20.0);
    CHECK(conv.convolution->theta_rx_deg == 20.0);
    CHECK(conv.convolution->pixel_x == 0.25);
    CHECK(conv.convolution->samples == 16001);

    const auto nt = load_config(scenarios / "fig6_nt.cfg");
    REQUIRE(nt.nt_study);
    CHECK(nt.nt_study->tx_counts == std::vector<std::size_t>{2, 3, 31});
    CHECK(nt.nt_study->mono_count == 61);
    CHECK(nt.nt_study->half_span == 0.198);
}

TEST_CASE("Config - Save and reload is byte-identical")
{
    test_support::TempDir tmp("cfg");
    for (const char *name : {"table2.cfg", "table1_conv.cfg", "fig6_nt.cfg"})
    {
        auto c = load_config(scenarios / name);
        c.options.snr_db = 12.5;
        c.targets.push_back({{0.1 / 3.0, -1e-7, 2.0 / 7.0}, cplx(0.3, -0.9)});
        save_config(tmp / "a.cfg", c);
        const auto back = load_config(tmp / "a.cfg");
        save_config(tmp / "b.cfg", back);
        CHECK(detail::read_file(tmp / "a.cfg") == detail::read_file(tmp / "b.cfg"));
        CHECK(back.targets.back().position.x == c.targets.back().position.x);
        CHECK(back.targets.back().reflectivity == c.targets.back().reflectivity);
        CHECK(back.options.snr_db == c.options.snr_db);
    }
}

TEST_CASE("Config - Errors name the line and the offending key")
{
    CHECK(error_of("[band]\nbogus = 1\n") == "line 2: unknown key 'bogus' in section [band]");
    CHECK(error_of("\n\n[nowhere]\n").find("line 3: unknown section [nowhere]") == 0);
    CHECK(error_of("[band]\ncount = 3\ncount = 4\n").find("line 3: duplicate key 'count'") == 0);
    CHECK(error_of("[band]\nf_start_hz = thirty\n").find("line 2:") == 0);
    CHECK(error_of("[band]\nf_start_hz = thirty\n").find("f_start_hz") != std::string::npos);
    CHECK(error_of("count = 3\n").find("line 1:") == 0);
    CHECK(error_of("[array]\ntx_count = -2\n").find("tx_count") != std::string::npos);
    CHECK(error_of("[targets]\ntarget = 1, 2\n").find("line 2:") == 0);
    CHECK(error_of("[scene]\nx = 0, 0, 4\n").find("line 2:") == 0);
    CHECK(error_of("[options]\ninterpolation = cubic\n").find("cubic") != std::string::npos);
    CHECK(error_of("[band\n").find("line 1:") == 0);
    CHECK_THROWS_AS(load_config("/nonexistent/arcmimo.cfg"), ConfigError);
}

TEST_CASE("Config - Comments and defaults")
{
    const auto c = parse_config("# only a comment\n[band]  # trailing\ncount = 7 # seven\n");
    CHECK(c.band.count == 7);
    CHECK(c.band.f_start == 30e9);
    CHECK(c.targets.empty());
    CHECK_FALSE(c.options.snr_db);
}
