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
#include "forward.hpp"
#include "geometry.hpp"
#include "parallel.hpp"

namespace arcmimo
{
    struct BpOptions
    {
        bool range_decay = false;  // weight each sample by 1/(R_T R_R)
    };

    namespace detail
    {
        // sum_f s_f p q^f in plain real arithmetic (no inf/nan recovery paths)
        inline cplx phasor_sum(const cplx *s, std::size_t nf, cplx p, cplx q)
        {
            double pr = p.real(), pi_ = p.imag();
            const double qr = q.real(), qi = q.imag();
            double ar = 0.0, ai = 0.0;
            for (std::size_t f = 0; f < nf; ++f)
            {
                const double sr = s[f].real(), si = s[f].imag();
                ar += sr * pr - si * pi_;
                ai += sr * pi_ + si * pr;
                const double t = pr * qr - pi_ * qi;
                pi_ = pr * qi + pi_ * qr;
                pr = t;
            }
            return {ar, ai};
        }

        // sum_f s_f e^{+j k_f R}, k_f = k0 + f dk
        inline cplx matched_sum(const cplx *s, std::size_t nf, double k0, double dk, double range)
        {
            return phasor_sum(s, nf, std::polar(1.0, k0 * range), std::polar(1.0, dk * range));
        }

        inline std::vector<Vec3> voxel_points(const SceneGrid &scene)
        {
            std::vector<Vec3> pts;
            pts.reserve(scene.voxel_count());
            for (std::size_t i = 0; i < scene.x.count; ++i)
                for (std::size_t j = 0; j < scene.y.count; ++j)
                    for (std::size_t k = 0; k < scene.z.count; ++k)
                        pts.push_back(scene.voxel(i, j, k));
            return pts;
        }
    }

    // Back-projection evaluated at arbitrary points
    inline std::vector<cplx> bp_points(const EchoCube &echo, double radius, std::span<const Vec3> points, const BpOptions &opt = {})
    {
        const std::size_t nf = echo.freqs.count(), nt = echo.tx.count, nr = echo.rx.count, nz = echo.z.count;
        const double k0 = echo.freqs.wavenumber(0), dk = echo.freqs.k_step();

        // split re/im, [t][r][f][z], so the scan positions form independent SIMD lanes
        std::vector<double> sre(echo.data.size()), sim(echo.data.size());
        for (std::size_t f = 0; f < nf; ++f)
            for (std::size_t t = 0; t < nt; ++t)
                for (std::size_t r = 0; r < nr; ++r)
                    for (std::size_t z = 0; z < nz; ++z)
                    {
                        const cplx v = echo.data(f, t, r, z);
                        const std::size_t o = ((t * nr + r) * nf + f) * nz + z;
                        sre[o] = v.real();
                        sim[o] = v.imag();
                    }

        std::vector<Vec3> at(nt * nz), ar(nr * nz);
        for (std::size_t t = 0; t < nt; ++t)
            for (std::size_t z = 0; z < nz; ++z)
                at[t * nz + z] = antenna_position(echo.tx[t], echo.z[z], radius);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t z = 0; z < nz; ++z)
                ar[r * nz + z] = antenna_position(echo.rx[r], echo.z[z], radius);

        std::vector<cplx> out(points.size());
        parallel_for(points.size(), [&](std::size_t v)
                     {
            // one-way phasors e^{j k0 R}, e^{j dk R}; two-way terms are their products
            std::vector<double> rt(nt * nz), rr(nr * nz);
            std::vector<cplx> pt(nt * nz), qt(nt * nz), pr(nr * nz), qr(nr * nz);
            for (std::size_t i = 0; i < nt * nz; ++i)
            {
                rt[i] = distance(points[v], at[i]);
                pt[i] = std::polar(1.0, k0 * rt[i]);
                qt[i] = std::polar(1.0, dk * rt[i]);
            }
            for (std::size_t i = 0; i < nr * nz; ++i)
            {
                rr[i] = distance(points[v], ar[i]);
                pr[i] = std::polar(1.0, k0 * rr[i]);
                qr[i] = std::polar(1.0, dk * rr[i]);
            }
            std::vector<double> ph_r(nz), ph_i(nz), st_r(nz), st_i(nz), ac_r(nz, 0.0), ac_i(nz, 0.0), wgt(nz), tr(nz), ti(nz);
            for (std::size_t t = 0; t < nt; ++t)
                for (std::size_t r = 0; r < nr; ++r)
                {
                    for (std::size_t z = 0; z < nz; ++z)
                    {
                        const std::size_t it = t * nz + z, ir = r * nz + z;
                        const double a = rt[it], b = rr[ir];
                        const bool skip = a < detail::coincidence_tolerance || b < detail::coincidence_tolerance;
                        wgt[z] = skip ? 0.0 : (opt.range_decay ? 1.0 / (a * b) : 1.0);
                        const cplx p = pt[it] * pr[ir], q = qt[it] * qr[ir];
                        ph_r[z] = p.real();
                        ph_i[z] = p.imag();
                        st_r[z] = q.real();
                        st_i[z] = q.imag();
                    }
                    std::fill(tr.begin(), tr.end(), 0.0);
                    std::fill(ti.begin(), ti.end(), 0.0);
                    const double *br = &sre[(t * nr + r) * nf * nz], *bi = &sim[(t * nr + r) * nf * nz];
                    for (std::size_t f = 0; f < nf; ++f)
                    {
                        const double *sr = br + f * nz, *si = bi + f * nz;
                        for (std::size_t z = 0; z < nz; ++z)
                        {
                            tr[z] += sr[z] * ph_r[z] - si[z] * ph_i[z];
                            ti[z] += sr[z] * ph_i[z] + si[z] * ph_r[z];
                            const double nr_ = ph_r[z] * st_r[z] - ph_i[z] * st_i[z];
                            ph_i[z] = ph_r[z] * st_i[z] + ph_i[z] * st_r[z];
                            ph_r[z] = nr_;
                        }
                    }
                    for (std::size_t z = 0; z < nz; ++z)
                    {
                        ac_r[z] += wgt[z] * tr[z];
                        ac_i[z] += wgt[z] * ti[z];
                    }
                }
            cplx acc{};
            for (std::size_t z = 0; z < nz; ++z)
                acc += cplx{ac_r[z], ac_i[z]};
            out[v] = acc; });
        return out;
    }

    inline std::vector<cplx> bp_points_monostatic(const MonostaticEcho &echo, double radius, std::span<const Vec3> points,
                                                  const BpOptions &opt = {})
    {
        const std::size_t nf = echo.freqs.count(), na = echo.angles.count, nz = echo.z.count;
        const double k0 = echo.freqs.wavenumber(0), dk = echo.freqs.k_step();

        std::vector<cplx> s(echo.data.size());
        for (std::size_t f = 0; f < nf; ++f)
            for (std::size_t i = 0; i < na * nz; ++i)
                s[i * nf + f] = echo.data[f * na * nz + i];

        std::vector<Vec3> pos(na * nz);
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t z = 0; z < nz; ++z)
                pos[a * nz + z] = antenna_position(echo.angles[a], echo.z[z], radius);

        std::vector<cplx> out(points.size());
        parallel_for(points.size(), [&](std::size_t v)
                     {
            cplx acc{};
            for (std::size_t i = 0; i < na * nz; ++i)
            {
                const double r = distance(points[v], pos[i]);
                if (r < detail::coincidence_tolerance)
                    continue;
                const cplx term = detail::matched_sum(&s[i * nf], nf, k0, dk, 2.0 * r);
                acc += opt.range_decay ? term / (r * r) : term;
            }
            out[v] = acc; });
        return out;
    }

    inline ImageVolume bp_reconstruct(const EchoCube &echo, double radius, const SceneGrid &scene, const BpOptions &opt = {})
    {
        scene.validate();
        ImageVolume img(scene);
        const auto pts = detail::voxel_points(scene);
        const auto v = bp_points(echo, radius, pts, opt);
        std::copy(v.begin(), v.end(), img.data.values().begin());
        return img;
    }

    inline ImageVolume bp_reconstruct_monostatic(const MonostaticEcho &echo, double radius, const SceneGrid &scene,
                                                 const BpOptions &opt = {})
    {
        scene.validate();
        ImageVolume img(scene);
        const auto pts = detail::voxel_points(scene);
        const auto v = bp_points_monostatic(echo, radius, pts, opt);
        std::copy(v.begin(), v.end(), img.data.values().begin());
        return img;
    }
}
