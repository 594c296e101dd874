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

#ifndef SARPHYS_WINDOW_HPP
#define SARPHYS_WINDOW_HPP

#include <cstddef>
#include <string_view>
#include <vector>

namespace sarphys
{
    enum class WindowKind
    {
        rect,
        hann,
        hamming
    };

    // Periodic convention: w[k] = a - (1 - a) cos(2 pi k / n).
    std::vector<double> window(WindowKind kind, std::size_t n);

    WindowKind parse_window(std::string_view name);
    std::string_view window_name(WindowKind kind);
}

#endif
