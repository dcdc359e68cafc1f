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

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace arcmimo
{
    // Worker cap from ARCMIMO_THREADS, else hardware concurrency
    inline std::size_t worker_count()
    {
        std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
        if (const char *env = std::getenv("ARCMIMO_THREADS"))
        {
            char *end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v > 0)
                return std::size_t(v);
        }
        return hw;
    }

    // Static contiguous chunks; every index is processed by exactly one call of fn(i).
    // Results must not depend on which worker runs an index.
    template <class Fn>
    void parallel_for(std::size_t n, Fn &&fn)
    {
        const std::size_t workers = std::min(worker_count(), n);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
        {
            const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
            pool.emplace_back([&, lo, hi, w]
                              {
                try
                {
                    for (std::size_t i = lo; i < hi; ++i)
                        fn(i);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                } });
        }
        for (auto &t : pool)
            t.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}
