// SPDX-License-Identifier: Apache-2.0
//
// sarphys - explainable physical layers for synthetic aperture radar
// Copyright (C) 2026 The sarphys authors
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

#include "sarphys/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace sarphys
{
    namespace
    {
        std::atomic<unsigned> g_threads{1};
    }

    void set_thread_count(unsigned n)
    {
        if (n == 0)
            n = std::max(1u, std::thread::hardware_concurrency());
        g_threads.store(n);
    }

    unsigned thread_count() { return g_threads.load(); }

    void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)> &body)
    {
        const std::size_t workers = std::min<std::size_t>(thread_count(), n);
        if (workers <= 1)
        {
            if (n > 0)
                body(0, n);
            return;
        }
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
        {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin >= end)
                break;
            pool.emplace_back([&, w, begin, end]
                              {
                try { body(begin, end); }
                catch (...) { errors[w] = std::current_exception(); } });
        }
        for (auto &t : pool)
            t.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}
