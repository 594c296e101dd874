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

#ifndef SARPHYS_FFT_HPP
#define SARPHYS_FFT_HPP

#include "sarphys/core.hpp"

#include <span>
#include <vector>

namespace sarphys
{
    enum class FftDirection
    {
        forward, // unscaled, exp(-j 2 pi k n / N)
        inverse  // carries the 1/N factor
    };

    // In-place 1-D transform of any length.
    void fft(std::span<cdouble> data, FftDirection dir);

    // Dense double-precision complex matrix used as FFT workspace.
    struct ComplexGrid
    {
        std::size_t rows = 0, cols = 0;
        std::vector<cdouble> data;

        ComplexGrid() = default;
        ComplexGrid(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
        explicit ComplexGrid(const ComplexImage &img);

        cdouble &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
        const cdouble &operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

        ComplexImage to_image() const;
    };

    void fft_rows(ComplexGrid &g, FftDirection dir);
    void fft_cols(ComplexGrid &g, FftDirection dir);
    void fft2d(ComplexGrid &g, FftDirection dir);

    std::size_t next_pow2(std::size_t n);

    // Signed frequency of bin k for an n-point transform sampled at fs,
    // in [-fs/2, fs/2).
    double bin_frequency(std::size_t k, std::size_t n, double fs);
}

#endif
