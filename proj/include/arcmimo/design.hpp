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
#include "config.hpp"
#include "geometry.hpp"

#include <limits>
#include <sstream>

namespace arcmimo
{
    inline constexpr double scan_step_cap = 1.0e3;  // meters

    // Delta theta_R <= lambda_min / D
    inline double max_rx_spacing(double lambda_min, double extent)
    {
        if (!(lambda_min > 0.0) || !(extent > 0.0))
            throw std::invalid_argument("max_rx_spacing: inputs must be positive");
        return lambda_min / extent;
    }

    // Delta z' <= lambda_min / (4 sin(Theta_z / 2)), capped for vanishing Theta_z
    inline double max_scan_step(double lambda_min, double theta_z)
    {
        if (!(lambda_min > 0.0))
            throw std::invalid_argument("max_scan_step: lambda_min must be positive");
        if (!(theta_z > 0.0) || theta_z > pi)
            throw std::invalid_argument("max_scan_step: Theta_z must lie in (0, pi]");
        return std::min(lambda_min / (4.0 * std::sin(0.5 * theta_z)), scan_step_cap);
    }

    struct Resolutions
    {
        double dx = 0.0, dy = 0.0, dz = 0.0;
    };

    inline Resolutions resolutions(double lambda_c, double bandwidth, double theta_h, double theta_z)
    {
        auto cross = [lambda_c](double theta)
        { return theta > 0.0 ? lambda_c / (4.0 * std::sin(0.5 * theta)) : std::numeric_limits<double>::infinity(); };
        return {cross(theta_h), bandwidth > 0.0 ? speed_of_light / (2.0 * bandwidth) : std::numeric_limits<double>::infinity(),
                cross(theta_z)};
    }

    struct Violation
    {
        std::string rule;
        double actual = 0.0;
        double bound = 0.0;
    };

    struct DesignReport
    {
        double lambda_min = 0.0, lambda_c = 0.0;
        double extent = 0.0;  // D
        double theta_h = 0.0, theta_z = 0.0;
        double max_rx_angular_step = 0.0;
        double max_scan_step = 0.0;
        double dx = 0.0, dy = 0.0, dz = 0.0;
        std::vector<Violation> violations;
        std::vector<std::string> warnings;

        bool ok() const { return violations.empty(); }

        std::string to_kv() const
        {
            std::ostringstream o;
            o.precision(10);
            o << "design.lambda_min_m = " << lambda_min << '\n'
              << "design.lambda_c_m = " << lambda_c << '\n'
              << "design.extent_m = " << extent << '\n'
              << "design.theta_h_rad = " << theta_h << '\n'
              << "design.theta_z_rad = " << theta_z << '\n'
              << "design.max_rx_angular_step_rad = " << max_rx_angular_step << '\n'
              << "design.max_scan_step_m = " << max_scan_step << '\n'
              << "design.dx_m = " << dx << '\n'
              << "design.dy_m = " << dy << '\n'
              << "design.dz_m = " << dz << '\n'
              << "design.violations = " << violations.size() << '\n';
            for (const auto &v : violations)
                o << "design.violation." << v.rule << " = " << v.actual << ' ' << v.bound << '\n';
            for (const auto &w : warnings)
                o << "design.warning = " << w << '\n';
            return o.str();
        }

        std::string to_text() const
        {
            std::ostringstream o;
            o.precision(4);
            o << "Sampling and resolution check\n"
              << "  lambda_min           " << lambda_min * 1e3 << " mm\n"
              << "  scene extent D       " << extent << " m\n"
              << "  Rx angular step max  " << max_rx_angular_step * 1e3 << " mrad\n"
              << "  scan step max        " << max_scan_step * 1e3 << " mm\n"
              << "  resolution x/y/z     " << dx * 1e3 << " / " << dy * 1e3 << " / " << dz * 1e3 << " mm\n";
            if (violations.empty())
                o << "  all rules satisfied\n";
            for (const auto &v : violations)
                o << "  VIOLATION " << v.rule << ": actual " << v.actual << ", bound " << v.bound << '\n';
            for (const auto &w : warnings)
                o << "  warning: " << w << '\n';
            return o.str();
        }
    };

    inline DesignReport validate_config(const ScenarioConfig &cfg)
    {
        DesignReport r;
        const auto &a = cfg.array;
        const FrequencyGrid f = frequency_grid(cfg);
        r.lambda_min = f.lambda_min();
        r.lambda_c = f.lambda_c();
        r.extent = double(cfg.scene.x.count) * cfg.scene.x.step;

        const double rx_step = a.rx_arc_interval / a.radius;
        const double tx_step = a.tx_arc_interval / a.radius;
        r.theta_h = double(a.rx_count - 1) * rx_step;

        const Vec3 c = cfg.scene.center();
        const double range = std::hypot(c.x, c.y + a.radius);
        const double scan_length = double(a.scan_count - 1) * a.scan_step;
        r.theta_z = std::min(cfg.options.beamwidth, 2.0 * std::atan(scan_length / (2.0 * range)));

        r.max_rx_angular_step = max_rx_spacing(r.lambda_min, r.extent);
        if (rx_step > r.max_rx_angular_step)
            r.violations.push_back({"rx_spacing", rx_step, r.max_rx_angular_step});

        if (r.theta_z > 0.0)
        {
            r.max_scan_step = max_scan_step(r.lambda_min, std::min(r.theta_z, pi));
            if (r.max_scan_step >= scan_step_cap)
                r.warnings.push_back("scan-step bound capped at " + detail::fmt(scan_step_cap) + " m (Theta_z near zero)");
            if (a.scan_step > r.max_scan_step)
                r.violations.push_back({"scan_step", a.scan_step, r.max_scan_step});
        }
        else
        {
            r.max_scan_step = scan_step_cap;
            r.warnings.push_back("Theta_z is zero; scan-step bound capped at " + detail::fmt(scan_step_cap) + " m");
            r.violations.push_back({"scan_aperture", r.theta_z, 0.0});
        }

        // at least two transmitters, placed at or beyond the receive-arc endpoints
        if (a.tx_count < 2)
            r.violations.push_back({"transmit_endpoints", double(a.tx_count), 2.0});
        else
        {
            const double tx_half = 0.5 * double(a.tx_count - 1) * tx_step;
            const double rx_half = 0.5 * r.theta_h;
            if (tx_half < rx_half * (1.0 - 1e-12))
                r.violations.push_back({"transmit_endpoints", tx_half, rx_half});
        }

        const auto res = resolutions(r.lambda_c, f.bandwidth(), r.theta_h, r.theta_z);
        r.dx = res.dx;
        r.dy = res.dy;
        r.dz = res.dz;
        return r;
    }
}
