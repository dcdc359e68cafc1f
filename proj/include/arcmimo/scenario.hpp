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

#include "bp.hpp"
#include "config.hpp"
#include "forward.hpp"
#include "metrics.hpp"

#include <sstream>

namespace arcmimo
{
    namespace detail
    {
        inline bool axis_close(const UniformAxis &a, const UniformAxis &b)
        {
            auto near = [](double u, double v) { return std::abs(u - v) <= 1e-9 * std::max({1.0, std::abs(u), std::abs(v)}); };
            return a.count == b.count && near(a.origin, b.origin) && (a.count < 2 || near(a.step, b.step));
        }
    }

    inline void check_echo_matches(const EchoCube &echo, const ScenarioConfig &cfg)
    {
        const auto geom = build_geometry(cfg);
        const auto f = frequency_grid(cfg);
        auto fail = [](const std::string &axis, std::size_t got, std::size_t want)
        {
            throw DimensionError("echo/config mismatch on " + axis + " axis: echo has " + std::to_string(got) +
                                 " samples, config expects " + std::to_string(want));
        };
        if (!detail::axis_close(echo.freqs.axis(), f.axis()))
            fail("frequency", echo.freqs.count(), f.count());
        if (!detail::axis_close(echo.tx, geom.tx))
            fail("theta_tx", echo.tx.count, geom.tx.count);
        if (!detail::axis_close(echo.rx, geom.rx))
            fail("theta_rx", echo.rx.count, geom.rx.count);
        if (!detail::axis_close(echo.z, geom.z))
            fail("z_scan", echo.z.count, geom.z.count);
    }

    struct TargetReport
    {
        PointTarget target;
        std::array<std::size_t, 3> expected{};
        PeakReport report;
    };

    inline constexpr std::size_t target_search_radius = 2;  // voxels

    inline std::vector<TargetReport> target_reports(const ImageVolume &img, std::span<const PointTarget> targets)
    {
        std::vector<TargetReport> out;
        for (const auto &t : targets)
        {
            TargetReport r{t, nearest_voxel(img.scene, t.position), {}};
            r.report = peak_report(img, local_peak(img, r.expected, target_search_radius));
            out.push_back(r);
        }
        return out;
    }

    inline std::string format_target_reports(std::string_view algo, const std::vector<TargetReport> &reports)
    {
        std::ostringstream o;
        o.precision(8);
        o << "algo = " << algo << '\n' << "targets = " << reports.size() << '\n';
        for (std::size_t i = 0; i < reports.size(); ++i)
        {
            const auto &r = reports[i];
            const auto &p = r.report.peak;
            const std::string k = "target." + std::to_string(i) + ".";
            o << k << "expected_voxel = " << r.expected[0] << ' ' << r.expected[1] << ' ' << r.expected[2] << '\n'
              << k << "peak_voxel = " << p.index[0] << ' ' << p.index[1] << ' ' << p.index[2] << '\n'
              << k << "peak_position_m = " << p.position.x << ' ' << p.position.y << ' ' << p.position.z << '\n'
              << k << "peak_magnitude = " << p.magnitude << '\n'
              << k << "width_x_m = " << r.report.width[0] << '\n'
              << k << "width_y_m = " << r.report.width[1] << '\n'
              << k << "width_z_m = " << r.report.width[2] << '\n'
              << k << "sidelobe_x_db = " << r.report.sidelobe_db[0] << '\n'
              << k << "sidelobe_y_db = " << r.report.sidelobe_db[1] << '\n'
              << k << "sidelobe_z_db = " << r.report.sidelobe_db[2] << '\n'
              << k << "sidelobe_max_db = " << r.report.sidelobe_db_max << '\n';
        }
        return o.str();
    }

    // ----- transmit-count study (single scan position, x cut through the origin) ----

    struct NtStudyRow
    {
        std::string label;
        std::size_t tx_count = 0;  // 0 for the monostatic array
        double width = 0.0;        // m
        double sidelobe_db = no_sidelobe;
    };

    namespace detail
    {
        inline UniformAxis span_axis(std::size_t count, double half_span)
        {
            if (count < 2)
                return {1, 0.0, 1.0};
            return {count, -half_span, 2.0 * half_span / double(count - 1)};
        }

        inline NtStudyRow cut_metrics(std::string label, std::size_t nt, const std::vector<cplx> &v, double step)
        {
            std::vector<double> mag(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                mag[i] = std::abs(v[i]);
            const std::size_t pk = argmax(mag);
            return {std::move(label), nt, mainlobe_width(mag, pk, step), sidelobe_level(mag, pk)};
        }
    }

    inline std::vector<NtStudyRow> run_nt_study(const NtStudySetup &s, const FrequencyGrid &freqs, double radius)
    {
        if (s.cut_samples < 3 || !(s.cut_half_width > 0.0))
            throw std::invalid_argument("nt study: cut needs at least three samples and a positive half width");
        const std::vector<PointTarget> target{{{0.0, 0.0, 0.0}, 1.0}};
        const UniformAxis z{1, 0.0, 1.0};
        const UniformAxis cut{s.cut_samples, -s.cut_half_width, 2.0 * s.cut_half_width / double(s.cut_samples - 1)};
        std::vector<Vec3> pts(cut.count);
        for (std::size_t i = 0; i < cut.count; ++i)
            pts[i] = {cut[i], 0.0, 0.0};

        std::vector<NtStudyRow> rows;
        for (std::size_t nt : s.tx_counts)
        {
            const ArrayGeometry g{radius, detail::span_axis(nt, s.half_span), detail::span_axis(s.rx_count, s.half_span), z};
            const auto echo = simulate_echo(g, freqs, target);
            rows.push_back(detail::cut_metrics("mimo_nt" + std::to_string(nt), nt, bp_points(echo, radius, pts), cut.step));
        }
        const auto mono = simulate_monostatic(radius, detail::span_axis(s.mono_count, s.half_span), z, freqs, target);
        rows.push_back(detail::cut_metrics("mono" + std::to_string(s.mono_count), 0, bp_points_monostatic(mono, radius, pts), cut.step));
        return rows;
    }

    inline std::string format_nt_study(const std::vector<NtStudyRow> &rows)
    {
        std::ostringstream o;
        o.precision(8);
        for (const auto &r : rows)
            o << "nt_study." << r.label << ".width_m = " << r.width << '\n'
              << "nt_study." << r.label << ".sidelobe_db = " << r.sidelobe_db << '\n';
        return o.str();
    }
}
