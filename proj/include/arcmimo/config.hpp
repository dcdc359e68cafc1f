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

// Scenario files: `key = value` lines grouped under `[section]` headers.
// '#' starts a comment. Every section is optional; missing values keep the
// Table II defaults. `target` may repeat, every other key may appear once.

#include "common.hpp"
#include "forward.hpp"
#include "geometry.hpp"
#include "rma.hpp"
#include "spectral.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace arcmimo
{
    struct BandConfig
    {
        double f_start = 30e9;
        double f_stop = 35e9;
        std::size_t count = 25;
    };

    struct ScenarioOptions
    {
        Interpolation interpolation = Interpolation::linear;
        double hankel_floor = 1e-3;
        double order_margin = 20.0;
        bool matched_filter = false;
        double weight_floor = 0.05;
        std::optional<double> snr_db;
        bool range_decay = false;
        double beamwidth = pi;
        std::uint64_t noise_seed = 1;
    };

    struct OutputPaths
    {
        std::string echo = "echo.bin";
        std::string image = "image.bin";
        std::string report;
    };

    struct NtStudySetup
    {
        std::vector<std::size_t> tx_counts{2, 3, 31};
        std::size_t rx_count = 31;
        std::size_t mono_count = 61;
        double half_span = 0.198;  // radians, shared by every array
        double cut_half_width = 0.06;
        std::size_t cut_samples = 1201;
    };

    struct ScenarioConfig
    {
        BandConfig band;
        ArrayLayout array;
        std::vector<PointTarget> targets;
        SceneGrid scene;
        ScenarioOptions options;
        OutputPaths output;
        std::optional<ConvolutionStudySetup> convolution;
        std::optional<NtStudySetup> nt_study;
    };

    namespace detail
    {
        inline std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return std::string(s.substr(b, e - b + 1));
        }

        inline std::vector<std::string> split_list(const std::string &v)
        {
            std::vector<std::string> out;
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(trim(item));
            return out;
        }

        inline double parse_double(const std::string &v, std::size_t line, const std::string &key)
        {
            double d = 0.0;
            const char *b = v.data(), *e = v.data() + v.size();
            auto [p, ec] = std::from_chars(b, e, d);
            if (ec != std::errc() || p != e || !std::isfinite(d))
                throw ConfigError(line, "invalid number '" + v + "' for key '" + key + "'");
            return d;
        }

        inline std::size_t parse_count(const std::string &v, std::size_t line, const std::string &key)
        {
            unsigned long long n = 0;
            const char *b = v.data(), *e = v.data() + v.size();
            auto [p, ec] = std::from_chars(b, e, n);
            if (ec != std::errc() || p != e)
                throw ConfigError(line, "invalid integer '" + v + "' for key '" + key + "'");
            return std::size_t(n);
        }

        inline bool parse_bool(const std::string &v, std::size_t line, const std::string &key)
        {
            if (v == "true")
                return true;
            if (v == "false")
                return false;
            throw ConfigError(line, "invalid boolean '" + v + "' for key '" + key + "' (expected true or false)");
        }

        inline std::string fmt(double d)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", d);
            return buf;
        }
    }

    inline ScenarioConfig parse_config(std::istream &in)
    {
        using namespace detail;
        ScenarioConfig cfg;
        const std::map<std::string, std::set<std::string>> known{
            {"band", {"f_start_hz", "f_stop_hz", "count"}},
            {"array", {"radius_m", "tx_count", "tx_arc_interval_m", "rx_count", "rx_arc_interval_m", "scan_count", "scan_step_m"}},
            {"targets", {"target"}},
            {"scene", {"x", "y", "z"}},
            {"options", {"interpolation", "hankel_floor", "order_margin", "matched_filter", "weight_floor", "snr_db", "range_decay",
                         "beamwidth_rad", "noise_seed"}},
            {"output", {"echo", "image", "report"}},
            {"convolution", {"frequency_hz", "theta_tx_deg", "theta_rx_deg", "pixel_x_m", "pixel_y_m", "scan_step_m", "samples"}},
            {"nt_study", {"tx_counts", "rx_count", "mono_count", "half_span_rad", "cut_half_width_m", "cut_samples"}},
        };

        std::string section, raw;
        std::set<std::string> seen;
        std::size_t line = 0;
        while (std::getline(in, raw))
        {
            ++line;
            std::string text = raw;
            if (const auto h = text.find('#'); h != std::string::npos)
                text.erase(h);
            text = trim(text);
            if (text.empty())
                continue;

            if (text.front() == '[')
            {
                if (text.back() != ']')
                    throw ConfigError(line, "malformed section header '" + text + "'");
                section = trim(std::string_view(text).substr(1, text.size() - 2));
                if (!known.count(section))
                    throw ConfigError(line, "unknown section [" + section + "]");
                if (section == "convolution" && !cfg.convolution)
                    cfg.convolution = ConvolutionStudySetup{};
                if (section == "nt_study" && !cfg.nt_study)
                    cfg.nt_study = NtStudySetup{};
                continue;
            }

            const auto eq = text.find('=');
            if (eq == std::string::npos)
                throw ConfigError(line, "expected 'key = value', got '" + text + "'");
            const std::string key = trim(std::string_view(text).substr(0, eq));
            const std::string val = trim(std::string_view(text).substr(eq + 1));
            if (section.empty())
                throw ConfigError(line, "key '" + key + "' appears before any [section]");
            if (!known.at(section).count(key))
                throw ConfigError(line, "unknown key '" + key + "' in section [" + section + "]");
            if (val.empty())
                throw ConfigError(line, "empty value for key '" + key + "'");
            if (key != "target" && !seen.insert(section + "." + key).second)
                throw ConfigError(line, "duplicate key '" + key + "' in section [" + section + "]");

            auto num = [&]
            { return parse_double(val, line, key); };
            auto cnt = [&]
            { return parse_count(val, line, key); };

            if (section == "band")
            {
                if (key == "f_start_hz")
                    cfg.band.f_start = num();
                else if (key == "f_stop_hz")
                    cfg.band.f_stop = num();
                else
                    cfg.band.count = cnt();
            }
            else if (section == "array")
            {
                auto &a = cfg.array;
                if (key == "radius_m")
                    a.radius = num();
                else if (key == "tx_count")
                    a.tx_count = cnt();
                else if (key == "tx_arc_interval_m")
                    a.tx_arc_interval = num();
                else if (key == "rx_count")
                    a.rx_count = cnt();
                else if (key == "rx_arc_interval_m")
                    a.rx_arc_interval = num();
                else if (key == "scan_count")
                    a.scan_count = cnt();
                else
                    a.scan_step = num();
            }
            else if (section == "targets")
            {
                const auto parts = split_list(val);
                if (parts.size() != 3 && parts.size() != 5)
                    throw ConfigError(line, "key 'target' expects x, y, z[, re, im]");
                PointTarget t;
                t.position = {parse_double(parts[0], line, key), parse_double(parts[1], line, key), parse_double(parts[2], line, key)};
                if (parts.size() == 5)
                    t.reflectivity = {parse_double(parts[3], line, key), parse_double(parts[4], line, key)};
                cfg.targets.push_back(t);
            }
            else if (section == "scene")
            {
                const auto parts = split_list(val);
                if (parts.size() != 3)
                    throw ConfigError(line, "key '" + key + "' expects origin, step, count");
                UniformAxis ax{parse_count(parts[2], line, key), parse_double(parts[0], line, key), parse_double(parts[1], line, key)};
                if (ax.count < 1 || !(ax.step > 0.0))
                    throw ConfigError(line, "key '" + key + "' needs step > 0 and count >= 1");
                (key == "x" ? cfg.scene.x : key == "y" ? cfg.scene.y : cfg.scene.z) = ax;
            }
            else if (section == "options")
            {
                auto &o = cfg.options;
                if (key == "interpolation")
                {
                    if (val != "linear")
                        throw ConfigError(line, "unsupported interpolation '" + val + "' (only 'linear')");
                }
                else if (key == "hankel_floor")
                    o.hankel_floor = num();
                else if (key == "order_margin")
                    o.order_margin = num();
                else if (key == "matched_filter")
                    o.matched_filter = parse_bool(val, line, key);
                else if (key == "weight_floor")
                    o.weight_floor = num();
                else if (key == "snr_db")
                    o.snr_db = (val == "none") ? std::nullopt : std::optional<double>(num());
                else if (key == "range_decay")
                    o.range_decay = parse_bool(val, line, key);
                else if (key == "beamwidth_rad")
                    o.beamwidth = num();
                else
                    o.noise_seed = cnt();
            }
            else if (section == "output")
            {
                (key == "echo" ? cfg.output.echo : key == "image" ? cfg.output.image : cfg.output.report) = val;
            }
            else if (section == "convolution")
            {
                auto &c = *cfg.convolution;
                if (key == "frequency_hz")
                    c.frequency = num();
                else if (key == "theta_tx_deg")
                    c.theta_tx_deg = num();
                else if (key == "theta_rx_deg")
                    c.theta_rx_deg = num();
                else if (key == "pixel_x_m")
                    c.pixel_x = num();
                else if (key == "pixel_y_m")
                    c.pixel_y = num();
                else if (key == "scan_step_m")
                    c.scan_step = num();
                else
                    c.samples = cnt();
            }
            else if (section == "nt_study")
            {
                auto &n = *cfg.nt_study;
                if (key == "tx_counts")
                {
                    n.tx_counts.clear();
                    for (const auto &p : split_list(val))
                        n.tx_counts.push_back(parse_count(p, line, key));
                }
                else if (key == "rx_count")
                    n.rx_count = cnt();
                else if (key == "mono_count")
                    n.mono_count = cnt();
                else if (key == "half_span_rad")
                    n.half_span = num();
                else if (key == "cut_half_width_m")
                    n.cut_half_width = num();
                else
                    n.cut_samples = cnt();
            }
        }
        if (cfg.convolution)
            cfg.convolution->radius = cfg.array.radius;
        return cfg;
    }

    inline ScenarioConfig parse_config(const std::string &text)
    {
        std::istringstream in(text);
        return parse_config(in);
    }

    inline ScenarioConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError(0, "cannot open config " + path.string());
        return parse_config(in);
    }

    // Canonical text form; parse(serialize(c)) reproduces c exactly
    inline std::string serialize_config(const ScenarioConfig &c)
    {
        using detail::fmt;
        std::ostringstream o;
        o << "[band]\n"
          << "f_start_hz = " << fmt(c.band.f_start) << "\n"
          << "f_stop_hz = " << fmt(c.band.f_stop) << "\n"
          << "count = " << c.band.count << "\n\n";
        o << "[array]\n"
          << "radius_m = " << fmt(c.array.radius) << "\n"
          << "tx_count = " << c.array.tx_count << "\n"
          << "tx_arc_interval_m = " << fmt(c.array.tx_arc_interval) << "\n"
          << "rx_count = " << c.array.rx_count << "\n"
          << "rx_arc_interval_m = " << fmt(c.array.rx_arc_interval) << "\n"
          << "scan_count = " << c.array.scan_count << "\n"
          << "scan_step_m = " << fmt(c.array.scan_step) << "\n\n";
        o << "[targets]\n";
        for (const auto &t : c.targets)
            o << "target = " << fmt(t.position.x) << ", " << fmt(t.position.y) << ", " << fmt(t.position.z) << ", "
              << fmt(t.reflectivity.real()) << ", " << fmt(t.reflectivity.imag()) << "\n";
        o << "\n[scene]\n";
        const char *names[3] = {"x", "y", "z"};
        for (std::size_t a = 0; a < 3; ++a)
        {
            const auto &ax = c.scene.axis(a);
            o << names[a] << " = " << fmt(ax.origin) << ", " << fmt(ax.step) << ", " << ax.count << "\n";
        }
        const auto &op = c.options;
        o << "\n[options]\n"
          << "interpolation = linear\n"
          << "hankel_floor = " << fmt(op.hankel_floor) << "\n"
          << "order_margin = " << fmt(op.order_margin) << "\n"
          << "matched_filter = " << (op.matched_filter ? "true" : "false") << "\n"
          << "weight_floor = " << fmt(op.weight_floor) << "\n"
          << "snr_db = " << (op.snr_db ? fmt(*op.snr_db) : std::string("none")) << "\n"
          << "range_decay = " << (op.range_decay ? "true" : "false") << "\n"
          << "beamwidth_rad = " << fmt(op.beamwidth) << "\n"
          << "noise_seed = " << op.noise_seed << "\n";
        o << "\n[output]\n"
          << "echo = " << c.output.echo << "\n"
          << "image = " << c.output.image << "\n";
        if (!c.output.report.empty())
            o << "report = " << c.output.report << "\n";
        if (c.convolution)
        {
            const auto &s = *c.convolution;
            o << "\n[convolution]\n"
              << "frequency_hz = " << fmt(s.frequency) << "\n"
              << "theta_tx_deg = " << fmt(s.theta_tx_deg) << "\n"
              << "theta_rx_deg = " << fmt(s.theta_rx_deg) << "\n"
              << "pixel_x_m = " << fmt(s.pixel_x) << "\n"
              << "pixel_y_m = " << fmt(s.pixel_y) << "\n"
              << "scan_step_m = " << fmt(s.scan_step) << "\n"
              << "samples = " << s.samples << "\n";
        }
        if (c.nt_study)
        {
            const auto &n = *c.nt_study;
            o << "\n[nt_study]\ntx_counts = ";
            for (std::size_t i = 0; i < n.tx_counts.size(); ++i)
                o << (i ? ", " : "") << n.tx_counts[i];
            o << "\nrx_count = " << n.rx_count << "\n"
              << "mono_count = " << n.mono_count << "\n"
              << "half_span_rad = " << fmt(n.half_span) << "\n"
              << "cut_half_width_m = " << fmt(n.cut_half_width) << "\n"
              << "cut_samples = " << n.cut_samples << "\n";
        }
        return o.str();
    }

    inline void save_config(const std::filesystem::path &path, const ScenarioConfig &c)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        out << serialize_config(c);
    }

    // ----- conversions to library inputs --------------------------------------

    inline FrequencyGrid frequency_grid(const ScenarioConfig &c) { return FrequencyGrid(c.band.f_start, c.band.f_stop, c.band.count); }
    inline ArrayGeometry build_geometry(const ScenarioConfig &c) { return build_geometry(c.array); }

    inline SimulationOptions simulation_options(const ScenarioConfig &c)
    {
        return {c.options.range_decay, c.options.snr_db, c.options.noise_seed};
    }

    inline RmaOptions rma_options(const ScenarioConfig &c)
    {
        RmaOptions o;
        o.interpolation = c.options.interpolation;
        o.hankel_floor = c.options.hankel_floor;
        o.order_margin = c.options.order_margin;
        o.matched_filter = c.options.matched_filter;
        o.weight_floor = c.options.weight_floor;
        return o;
    }
}
