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

// ARCMIMO1 container:
//   8 bytes  "ARCMIMO1"
//   u32      rank
//   rank x { u32 length, f64 origin, f64 step, char[16] label (NUL padded) }
//   f64 re, f64 im for every element, row-major
// All integers and floats little-endian.

#include "common.hpp"
#include "forward.hpp"
#include "geometry.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace arcmimo
{
    inline constexpr char arcmimo_magic[8] = {'A', 'R', 'C', 'M', 'I', 'M', 'O', '1'};
    inline constexpr std::size_t axis_label_size = 16;

    struct AxisHeader
    {
        UniformAxis axis;
        std::string label;
        bool operator==(const AxisHeader &) const = default;
    };

    struct RawArray
    {
        std::vector<AxisHeader> axes;
        std::vector<cplx> values;
    };

    namespace detail
    {
        inline void put_u32(std::string &out, std::uint32_t v)
        {
            for (int i = 0; i < 4; ++i)
                out.push_back(char((v >> (8 * i)) & 0xFFu));
        }
        inline void put_f64(std::string &out, double d)
        {
            const auto v = std::bit_cast<std::uint64_t>(d);
            for (int i = 0; i < 8; ++i)
                out.push_back(char((v >> (8 * i)) & 0xFFu));
        }
        inline std::uint64_t get_le(const unsigned char *p, int n)
        {
            std::uint64_t v = 0;
            for (int i = n - 1; i >= 0; --i)
                v = (v << 8) | p[i];
            return v;
        }

        inline std::string read_file(const std::filesystem::path &path)
        {
            std::ifstream in(path, std::ios::binary);
            if (!in)
                throw std::runtime_error("cannot open " + path.string());
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        inline void write_file(const std::filesystem::path &path, const std::string &bytes)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write " + path.string());
            out.write(bytes.data(), std::streamsize(bytes.size()));
            if (!out)
                throw std::runtime_error("write failed for " + path.string());
        }
    }

    inline std::string encode_array(const std::vector<AxisHeader> &axes, std::span<const cplx> values)
    {
        std::size_t n = 1;
        for (const auto &a : axes)
            n *= a.axis.count;
        if (n != values.size())
            throw DimensionError("encode_array: axis lengths do not match the payload");

        std::string out(arcmimo_magic, 8);
        detail::put_u32(out, std::uint32_t(axes.size()));
        for (const auto &a : axes)
        {
            if (a.label.size() > axis_label_size)
                throw FormatError("axis label longer than 16 bytes: " + a.label);
            detail::put_u32(out, std::uint32_t(a.axis.count));
            detail::put_f64(out, a.axis.origin);
            detail::put_f64(out, a.axis.step);
            std::string lab = a.label;
            lab.resize(axis_label_size, '\0');
            out += lab;
        }
        out.reserve(out.size() + 16 * values.size());
        for (const auto &v : values)
        {
            detail::put_f64(out, v.real());
            detail::put_f64(out, v.imag());
        }
        return out;
    }

    inline RawArray decode_array(const std::string &bytes)
    {
        const auto *p = reinterpret_cast<const unsigned char *>(bytes.data());
        const std::size_t size = bytes.size();
        if (size < 12 || std::memcmp(p, arcmimo_magic, 8) != 0)
            throw FormatError("missing ARCMIMO1 magic");
        const std::size_t rank = std::size_t(detail::get_le(p + 8, 4));
        if (rank == 0 || rank > 8)
            throw FormatError("unsupported rank " + std::to_string(rank));
        constexpr std::size_t axis_bytes = 4 + 8 + 8 + axis_label_size;
        if (size < 12 + rank * axis_bytes)
            throw TruncatedError("header truncated");

        RawArray r;
        std::size_t count = 1, pos = 12;
        for (std::size_t a = 0; a < rank; ++a, pos += axis_bytes)
        {
            AxisHeader h;
            h.axis.count = std::size_t(detail::get_le(p + pos, 4));
            h.axis.origin = std::bit_cast<double>(detail::get_le(p + pos + 4, 8));
            h.axis.step = std::bit_cast<double>(detail::get_le(p + pos + 12, 8));
            const char *lab = bytes.data() + pos + 20;
            h.label.assign(lab, strnlen(lab, axis_label_size));
            if (h.axis.count == 0)
                throw FormatError("zero-length axis '" + h.label + "'");
            count *= h.axis.count;
            r.axes.push_back(h);
        }
        const std::size_t need = pos + 16 * count;
        if (size < need)
            throw TruncatedError("payload truncated: expected " + std::to_string(need) + " bytes, found " + std::to_string(size));
        if (size > need)
            throw FormatError("trailing bytes after payload");
        r.values.resize(count);
        for (std::size_t i = 0; i < count; ++i, pos += 16)
            r.values[i] = {std::bit_cast<double>(detail::get_le(p + pos, 8)), std::bit_cast<double>(detail::get_le(p + pos + 8, 8))};
        return r;
    }

    namespace detail
    {
        inline void expect_axes(const RawArray &r, std::initializer_list<const char *> labels)
        {
            if (r.axes.size() != labels.size())
                throw DimensionError("expected rank " + std::to_string(labels.size()) + ", file has rank " + std::to_string(r.axes.size()));
            std::size_t i = 0;
            for (const char *l : labels)
            {
                if (r.axes[i].label != l)
                    throw DimensionError("axis " + std::to_string(i) + " is '" + r.axes[i].label + "', expected '" + l + "'");
                ++i;
            }
        }

        template <std::size_t R>
        ComplexArray<R> to_array(const RawArray &r)
        {
            typename ComplexArray<R>::Shape s;
            for (std::size_t a = 0; a < R; ++a)
                s[a] = r.axes[a].axis.count;
            ComplexArray<R> out(s);
            std::copy(r.values.begin(), r.values.end(), out.values().begin());
            return out;
        }
    }

    // ----- EchoCube ----------------------------------------------------------

    inline std::string encode_echo(const EchoCube &e)
    {
        return encode_array({{e.freqs.axis(), "frequency_hz"}, {e.tx, "theta_tx"}, {e.rx, "theta_rx"}, {e.z, "z_scan"}},
                            e.data.values());
    }

    inline EchoCube decode_echo(const std::string &bytes)
    {
        const RawArray r = decode_array(bytes);
        detail::expect_axes(r, {"frequency_hz", "theta_tx", "theta_rx", "z_scan"});
        const auto &f = r.axes[0].axis;
        EchoCube e(FrequencyGrid::from_axis(f.origin, f.step, f.count), r.axes[1].axis, r.axes[2].axis, r.axes[3].axis);
        e.data = detail::to_array<4>(r);
        return e;
    }

    inline void save_echo(const std::filesystem::path &path, const EchoCube &e) { detail::write_file(path, encode_echo(e)); }
    inline EchoCube load_external_echo(const std::filesystem::path &path) { return decode_echo(detail::read_file(path)); }

    // ----- ImageVolume -------------------------------------------------------

    inline std::string encode_image(const ImageVolume &img)
    {
        return encode_array({{img.scene.x, "x"}, {img.scene.y, "y"}, {img.scene.z, "z"}}, img.data.values());
    }

    inline ImageVolume decode_image(const std::string &bytes)
    {
        const RawArray r = decode_array(bytes);
        detail::expect_axes(r, {"x", "y", "z"});
        SceneGrid s{r.axes[0].axis, r.axes[1].axis, r.axes[2].axis};
        ImageVolume img(s);
        img.data = detail::to_array<3>(r);
        return img;
    }

    inline void save_image(const std::filesystem::path &path, const ImageVolume &img) { detail::write_file(path, encode_image(img)); }
    inline ImageVolume load_image(const std::filesystem::path &path) { return decode_image(detail::read_file(path)); }

    // Generic dump for intermediate spectra
    template <std::size_t R>
    void save_array(const std::filesystem::path &path, const ComplexArray<R> &a, const std::array<AxisHeader, R> &axes)
    {
        detail::write_file(path, encode_array(std::vector<AxisHeader>(axes.begin(), axes.end()), a.values()));
    }
}
