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

#include "sarphys/window.hpp"
#include "sarphys/core.hpp"

#include <cmath>
#include <string>

namespace sarphys
{
    std::vector<double> window(WindowKind kind, std::size_t n)
    {
        if (n == 0)
            fail("window length must be >= 1");
        std::vector<double> w(n, 1.0);
        if (kind == WindowKind::rect)
            return w;
        const double a = kind == WindowKind::hann ? 0.5 : 0.54;
        for (std::size_t k = 0; k < n; ++k)
            w[k] = a - (1.0 - a) * std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
        return w;
    }

    WindowKind parse_window(std::string_view name)
    {
        if (name == "rect")
            return WindowKind::rect;
        if (name == "hann")
            return WindowKind::hann;
        if (name == "hamming")
            return WindowKind::hamming;
        fail("unknown window '" + std::string(name) + "' (expected rect, hann or hamming)");
    }

    std::string_view window_name(WindowKind kind)
    {
        switch (kind)
        {
        case WindowKind::hann:
            return "hann";
        case WindowKind::hamming:
            return "hamming";
        default:
            return "rect";
        }
    }
}
