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
#include "parallel.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace arcmimo
{
    // Stepped-frequency grid: f_i = start + i * step
    class FrequencyGrid
    {
    public:
        FrequencyGrid() = default;
        FrequencyGrid(double f_start, double f_stop, std::size_t count)
            : start_(f_start), step_(count > 1 ? (f_stop - f_start) / double(count - 1) : 0.0), count_(count)
        {
            validate();
        }
        static FrequencyGrid from_axis(double f_start, double f_step, std::size_t count)
        {
            FrequencyGrid g;
            g.start_ = f_start;
            g.step_ = f_step;
            g.count_ = count;
            g.validate();
            return g;
        }

        void validate() const
        {
            if (count_ < 1 || !(start_ > 0.0) || !std::isfinite(start_))
                throw std::invalid_argument("frequency grid needs count >= 1 and f_start > 0");
            if (count_ > 1 && !(step_ > 0.0))
                throw std::invalid_argument("frequency grid needs f_stop > f_start");
        }

        std::size_t count() const { return count_; }
        double start() const { return start_; }
        double step() const { return step_; }
        double stop() const { return start_ + double(count_ - 1) * step_; }
        double frequency(std::size_t i) const { return start_ + double(i) * step_; }
        double wavenumber(std::size_t i) const { return 2.0 * pi * frequency(i) / speed_of_light; }
        double k_step() const { return 2.0 * pi * step_ / speed_of_light; }
        double bandwidth() const { return stop() - start_; }
        double center() const { return 0.5 * (start_ + stop()); }
        double lambda_c() const { return speed_of_light / center(); }
        double lambda_min() const { return speed_of_light / stop(); }
        UniformAxis axis() const { return {count_, start_, step_}; }

        bool operator==(const FrequencyGrid &) const = default;

    private:
        double start_ = 30e9;
        double step_ = 5e9 / 24.0;
        std::size_t count_ = 25;
    };

    // s(k, theta_T, theta_R, z'), data indexed [f][tx][rx][z]
    struct EchoCube
    {
        FrequencyGrid freqs;
        UniformAxis tx, rx, z;
        ComplexArray<4> data;

        EchoCube() = default;
        EchoCube(const FrequencyGrid &f, const UniformAxis &t, const UniformAxis &r, const UniformAxis &zz)
            : freqs(f), tx(t), rx(r), z(zz), data({f.count(), t.count, r.count, zz.count}) {}
        EchoCube(const FrequencyGrid &f, const ArrayGeometry &g) : EchoCube(f, g.tx, g.rx, g.z) {}

        bool operator==(const EchoCube &) const = default;
    };

    // s(k, theta, z') for co-located elements, indexed [f][angle][z]
    struct MonostaticEcho
    {
        FrequencyGrid freqs;
        UniformAxis angles, z;
        ComplexArray<3> data;
    };

    struct SimulationOptions
    {
        bool range_decay = false;           // 1/(R_T R_R) amplitude
        std::optional<double> snr_db;       // additive complex white noise
        std::uint64_t noise_seed = 1;
    };

    namespace detail
    {
        inline void check_targets(std::span<const PointTarget> targets)
        {
            if (targets.empty())
                throw std::invalid_argument("at least one target is required");
            for (const auto &t : targets)
                if (!std::isfinite(std::abs(t.reflectivity)) || !std::isfinite(t.position.x) ||
                    !std::isfinite(t.position.y) || !std::isfinite(t.position.z))
                    throw std::invalid_argument("target values must be finite");
        }

        template <std::size_t R>
        void add_noise(ComplexArray<R> &data, double snr_db, std::uint64_t seed)
        {
            const double p = energy(data.values()) / double(std::max<std::size_t>(data.size(), 1));
            const double sigma = std::sqrt(0.5 * p / std::pow(10.0, snr_db / 10.0));
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> g(0.0, 1.0);
            for (auto &v : data.values())
            {
                const double re = g(rng);
                const double im = g(rng);
                v += sigma * cplx{re, im};
            }
        }

        constexpr double coincidence_tolerance = 1e-12;
    }

    inline EchoCube simulate_echo(const ArrayGeometry &geom, const FrequencyGrid &freqs,
                                  std::span<const PointTarget> targets, const SimulationOptions &opt = {})
    {
        geom.validate();
        freqs.validate();
        detail::check_targets(targets);

        EchoCube echo(freqs, geom);
        const std::size_t nf = freqs.count(), nt = geom.tx.count, nr = geom.rx.count, nz = geom.z.count;
        const std::size_t fstride = nt * nr * nz;

        parallel_for(nt * nr * nz, [&](std::size_t idx)
                     {
            const std::size_t t = idx / (nr * nz), r = (idx / nz) % nr, zi = idx % nz;
            const Vec3 at = antenna_position(geom.tx[t], geom.z[zi], geom.radius);
            const Vec3 ar = antenna_position(geom.rx[r], geom.z[zi], geom.radius);
            std::vector<cplx> acc(nf, cplx{});
            for (const auto &tg : targets)
            {
                const double rt = distance(tg.position, at), rr = distance(tg.position, ar);
                if (rt < detail::coincidence_tolerance || rr < detail::coincidence_tolerance)
                    throw std::invalid_argument("target coincides with an antenna position");
                const double amp = opt.range_decay ? 1.0 / (rt * rr) : 1.0;
                for (std::size_t f = 0; f < nf; ++f)
                    acc[f] += tg.reflectivity * std::polar(amp, -freqs.wavenumber(f) * (rt + rr));
            }
            for (std::size_t f = 0; f < nf; ++f)
                echo.data[f * fstride + idx] = acc[f]; });

        if (opt.snr_db)
            detail::add_noise(echo.data, *opt.snr_db, opt.noise_seed);
        return echo;
    }

    inline MonostaticEcho simulate_monostatic(double radius, const UniformAxis &angles, const UniformAxis &z,
                                              const FrequencyGrid &freqs, std::span<const PointTarget> targets,
                                              const SimulationOptions &opt = {})
    {
        ArrayGeometry g{radius, angles, angles, z};
        g.validate();
        freqs.validate();
        detail::check_targets(targets);

        MonostaticEcho echo{freqs, angles, z, ComplexArray<3>({freqs.count(), angles.count, z.count})};
        const std::size_t nf = freqs.count(), na = angles.count, nz = z.count;

        parallel_for(na * nz, [&](std::size_t idx)
                     {
            const std::size_t a = idx / nz, zi = idx % nz;
            const Vec3 p = antenna_position(angles[a], z[zi], radius);
            std::vector<cplx> acc(nf, cplx{});
            for (const auto &tg : targets)
            {
                const double rr = distance(tg.position, p);
                if (rr < detail::coincidence_tolerance)
                    throw std::invalid_argument("target coincides with an antenna position");
                const double amp = opt.range_decay ? 1.0 / (rr * rr) : 1.0;
                for (std::size_t f = 0; f < nf; ++f)
                    acc[f] += tg.reflectivity * std::polar(amp, -2.0 * freqs.wavenumber(f) * rr);
            }
            for (std::size_t f = 0; f < nf; ++f)
                echo.data[f * na * nz + idx] = acc[f]; });

        if (opt.snr_db)
            detail::add_noise(echo.data, *opt.snr_db, opt.noise_seed);
        return echo;
    }
}
