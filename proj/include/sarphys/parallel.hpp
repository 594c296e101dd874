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

#ifndef SARPHYS_PARALLEL_HPP
#define SARPHYS_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace sarphys
{
    // 0 selects std::thread::hardware_concurrency().
    void set_thread_count(unsigned n);
    unsigned thread_count();

    // Runs body(begin, end) over disjoint chunks of [0, n). Work items must be
    // independent; results are then identical for every thread count.
    void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)> &body);
}

#endif
