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

#include <arcmimo/config.hpp>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace test_support
{
    using namespace arcmimo;

    // The bundled point-target scenario with a single unit target at the origin
    inline ScenarioConfig table2_config()
    {
        ScenarioConfig c;
        c.targets = {PointTarget{{0.0, 0.0, 0.0}, 1.0}};
        return c;
    }

    inline std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<cplx> v(n);
        for (auto &x : v)
        {
            const double re = g(rng);
            x = {re, g(rng)};
        }
        return v;
    }

    // sum a_i conj(b_i)
    inline cplx inner(std::span<const cplx> a, std::span<const cplx> b)
    {
        cplx s{};
        for (std::size_t i = 0; i < a.size(); ++i)
            s += a[i] * std::conj(b[i]);
        return s;
    }

    class TempDir
    {
    public:
        explicit TempDir(const std::string &tag)
        {
            path_ = std::filesystem::temp_directory_path() / ("arcmimo_" + tag + "_" + std::to_string(std::random_device{}()));
            std::filesystem::create_directories(path_);
        }
        ~TempDir()
        {
            std::error_code ec;
            std::filesystem::remove_all(path_, ec);
        }
        const std::filesystem::path &path() const { return path_; }
        std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

    private:
        std::filesystem::path path_;
    };

    class ScopedThreads
    {
    public:
        explicit ScopedThreads(int n)
        {
            if (const char *old = std::getenv("ARCMIMO_THREADS"))
                old_ = old;
            setenv("ARCMIMO_THREADS", std::to_string(n).c_str(), 1);
        }
        ~ScopedThreads()
        {
            if (old_.empty())
                unsetenv("ARCMIMO_THREADS");
            else
                setenv("ARCMIMO_THREADS", old_.c_str(), 1);
        }

    private:
        std::string old_;
    };
}
