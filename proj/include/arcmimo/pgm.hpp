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
#include "io.hpp"
#include "metrics.hpp"

#include <cstdint>
#include <sstream>

namespace arcmimo
{
    enum class SlicePlane
    {
        xy,
        xz,
        yz
    };

    inline SlicePlane parse_plane(const std::string &s)
    {
        if (s == "xy")
            return SlicePlane::xy;
        if (s == "xz")
            return SlicePlane::xz;
        if (s == "yz")
            return SlicePlane::yz;
        throw std::invalid_argument("unknown plane '" + s + "' (expected xy, xz or yz)");
    }

    struct GrayImage
    {
        std::size_t width = 0, height = 0;
        std::vector<std::uint16_t> pixels;  // row-major, row 0 at the top

        std::uint16_t at(std::size_t col, std::size_t row) const { return pixels[row * width + col]; }
        bool operator==(const GrayImage &) const = default;
    };

    // the two in-plane axes (horizontal, vertical) and the fixed axis
    inline std::array<std::size_t, 3> plane_axes(SlicePlane p)
    {
        switch (p)
        {
        case SlicePlane::xy:
            return {0, 1, 2};
        case SlicePlane::xz:
            return {0, 2, 1};
        default:
            return {1, 2, 0};
        }
    }

    // dB slice re the volume maximum, clipped to [-DR, 0], mapped linearly to 0..65535
    inline GrayImage slice_image(const ImageVolume &img, SlicePlane plane, double coordinate, double dynamic_range_db)
    {
        if (!(dynamic_range_db > 0.0))
            throw std::invalid_argument("slice_image: dynamic range must be positive");
        const auto [ha, va, fa] = plane_axes(plane);
        const UniformAxis &fixed = img.scene.axis(fa);
        const double fi = (coordinate - fixed.origin) / fixed.step;
        if (!(fi >= -0.5) || !(fi <= double(fixed.count) - 0.5))
            throw std::out_of_range("slice_image: coordinate " + std::to_string(coordinate) + " outside the grid");
        const std::size_t f = std::min(std::size_t(std::lround(std::max(fi, 0.0))), fixed.count - 1);

        double vmax = 0.0;
        for (std::size_t i = 0; i < img.data.size(); ++i)
            vmax = std::max(vmax, std::abs(img.data[i]));

        GrayImage g;
        g.width = img.scene.axis(ha).count;
        g.height = img.scene.axis(va).count;
        g.pixels.assign(g.width * g.height, 0);
        if (!(vmax > 0.0))
            return g;

        std::array<std::size_t, 3> idx{};
        idx[fa] = f;
        for (std::size_t row = 0; row < g.height; ++row)
            for (std::size_t col = 0; col < g.width; ++col)
            {
                idx[ha] = col;
                idx[va] = g.height - 1 - row;
                const double m = std::abs(img.data(idx[0], idx[1], idx[2]));
                const double db = std::clamp(to_db(m, vmax), -dynamic_range_db, 0.0);
                g.pixels[row * g.width + col] = std::uint16_t(std::lround((db + dynamic_range_db) / dynamic_range_db * 65535.0));
            }
        return g;
    }

    inline std::string encode_pgm(const GrayImage &g)
    {
        std::string out = "P5\n" + std::to_string(g.width) + " " + std::to_string(g.height) + "\n65535\n";
        out.reserve(out.size() + 2 * g.pixels.size());
        for (auto v : g.pixels)
        {
            out.push_back(char(v >> 8));
            out.push_back(char(v & 0xff));
        }
        return out;
    }

    inline GrayImage decode_pgm(const std::string &bytes)
    {
        std::istringstream in(bytes);
        std::string magic;
        std::size_t w = 0, h = 0, maxval = 0;
        if (!(in >> magic) || magic != "P5")
            throw FormatError("decode_pgm: missing P5 magic");
        if (!(in >> w >> h >> maxval) || maxval != 65535)
            throw FormatError("decode_pgm: bad header");
        in.get();
        const auto start = std::size_t(in.tellg());
        if (bytes.size() < start + 2 * w * h)
            throw TruncatedError("decode_pgm: short payload");
        if (bytes.size() != start + 2 * w * h)
            throw FormatError("decode_pgm: trailing bytes");
        GrayImage g{w, h, std::vector<std::uint16_t>(w * h)};
        for (std::size_t i = 0; i < w * h; ++i)
            g.pixels[i] = std::uint16_t((std::uint8_t(bytes[start + 2 * i]) << 8) | std::uint8_t(bytes[start + 2 * i + 1]));
        return g;
    }

    inline void write_pgm(const std::filesystem::path &path, const GrayImage &g) { detail::write_file(path, encode_pgm(g)); }
    inline GrayImage read_pgm(const std::filesystem::path &path) { return decode_pgm(detail::read_file(path)); }
}
