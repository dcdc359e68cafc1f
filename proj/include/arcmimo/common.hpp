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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcmimo
{
    using cplx = std::complex<double>;

    inline constexpr double speed_of_light = 299792458.0;
    inline constexpr double pi = std::numbers::pi;

    // ----- Errors -----------------------------------------------------------

    struct FormatError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct DimensionError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct TruncatedError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct ConfigError : std::runtime_error
    {
        ConfigError(std::size_t line, const std::string &what)
            : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_no(line) {}
        std::size_t line_no;
    };

    // ----- Uniform sampling -------------------------------------------------

    struct UniformAxis
    {
        std::size_t count = 1;
        double origin = 0.0;
        double step = 1.0;

        double operator[](std::size_t i) const { return origin + double(i) * step; }
        double last() const { return origin + double(count - 1) * step; }
        std::vector<double> values() const
        {
            std::vector<double> v(count);
            for (std::size_t i = 0; i < count; ++i)
                v[i] = (*this)[i];
            return v;
        }
        bool operator==(const UniformAxis &) const = default;
    };

    // Centered axis: value_i = (i - (n-1)/2) * step
    inline UniformAxis centered_axis(std::size_t count, double step)
    {
        return {count, -0.5 * double(count - 1) * step, step};
    }

    // ----- Dense complex arrays (row-major) ---------------------------------

    template <std::size_t Rank>
    class ComplexArray
    {
    public:
        using Shape = std::array<std::size_t, Rank>;

        ComplexArray() { shape_.fill(0); }
        explicit ComplexArray(const Shape &shape) : shape_(shape), data_(element_count(shape)) {}

        static std::size_t element_count(const Shape &s)
        {
            std::size_t n = 1;
            for (auto e : s)
                n *= e;
            return n;
        }

        const Shape &shape() const { return shape_; }
        std::size_t extent(std::size_t axis) const { return shape_[axis]; }
        std::size_t size() const { return data_.size(); }
        bool empty() const { return data_.empty(); }

        std::size_t stride(std::size_t axis) const
        {
            std::size_t s = 1;
            for (std::size_t a = axis + 1; a < Rank; ++a)
                s *= shape_[a];
            return s;
        }

        template <class... I>
        std::size_t offset(I... idx) const
        {
            static_assert(sizeof...(I) == Rank);
            const std::array<std::size_t, Rank> ix{std::size_t(idx)...};
            std::size_t o = 0;
            for (std::size_t a = 0; a < Rank; ++a)
                o = o * shape_[a] + ix[a];
            return o;
        }

        template <class... I>
        cplx &operator()(I... idx) { return data_[offset(idx...)]; }
        template <class... I>
        const cplx &operator()(I... idx) const { return data_[offset(idx...)]; }

        cplx &operator[](std::size_t i) { return data_[i]; }
        const cplx &operator[](std::size_t i) const { return data_[i]; }

        cplx *data() { return data_.data(); }
        const cplx *data() const { return data_.data(); }
        std::span<cplx> values() { return data_; }
        std::span<const cplx> values() const { return data_; }

        void fill(cplx v) { std::fill(data_.begin(), data_.end(), v); }

        bool operator==(const ComplexArray &) const = default;

    private:
        Shape shape_;
        std::vector<cplx> data_;
    };

    inline double energy(std::span<const cplx> v)
    {
        double e = 0.0;
        for (const auto &x : v)
            e += std::norm(x);
        return e;
    }

    // ||a - b|| / ||b||
    inline double relative_l2(std::span<const cplx> a, std::span<const cplx> b)
    {
        if (a.size() != b.size())
            throw DimensionError("relative_l2: size mismatch");
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            num += std::norm(a[i] - b[i]);
            den += std::norm(b[i]);
        }
        return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    }

    inline std::size_t next_pow2(std::size_t n)
    {
        std::size_t p = 1;
        while (p < n)
            p <<= 1;
        return p;
    }
}
