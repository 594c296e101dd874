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

#include "sarphys/fft.hpp"
#include "sarphys/parallel.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace sarphys
{
    namespace
    {
        // fftw planning is not thread-safe, execution with the new-array
        // interface is. Plans are unaligned so any buffer may be used.
        class PlanCache
        {
        public:
            ~PlanCache()
            {
                for (auto &[key, plan] : plans_)
                    fftw_destroy_plan(plan);
            }

            fftw_plan get(std::size_t n, FftDirection dir)
            {
                std::lock_guard lock(mutex_);
                auto key = std::make_pair(n, dir);
                if (auto it = plans_.find(key); it != plans_.end())
                    return it->second;
                std::vector<cdouble> scratch(n);
                auto *buf = reinterpret_cast<fftw_complex *>(scratch.data());
                fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                               dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                               FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(key, p);
                return p;
            }

        private:
            std::mutex mutex_;
            std::map<std::pair<std::size_t, FftDirection>, fftw_plan> plans_;
        };

        PlanCache &plan_cache()
        {
            static PlanCache cache;
            return cache;
        }
    }

    void fft(std::span<cdouble> data, FftDirection dir)
    {
        const std::size_t n = data.size();
        if (n == 0)
            return;
        fftw_plan p = plan_cache().get(n, dir);
        auto *buf = reinterpret_cast<fftw_complex *>(data.data());
        fftw_execute_dft(p, buf, buf);
        if (dir == FftDirection::inverse)
        {
            const double scale = 1.0 / static_cast<double>(n);
            for (auto &x : data)
                x *= scale;
        }
    }

    ComplexGrid::ComplexGrid(const ComplexImage &img) : rows(img.n_azimuth()), cols(img.n_range()), data(img.size())
    {
        auto s = img.samples();
        for (std::size_t i = 0; i < s.size(); ++i)
            data[i] = cdouble(s[i]);
    }

    ComplexImage ComplexGrid::to_image() const
    {
        std::vector<cfloat> s(data.size());
        for (std::size_t i = 0; i < data.size(); ++i)
            s[i] = cfloat(static_cast<float>(data[i].real()), static_cast<float>(data[i].imag()));
        return ComplexImage(rows, cols, std::move(s));
    }

    void fft_rows(ComplexGrid &g, FftDirection dir)
    {
        parallel_for(g.rows, [&](std::size_t b, std::size_t e)
                     {
            for (std::size_t r = b; r < e; ++r)
                fft(std::span<cdouble>(g.data.data() + r * g.cols, g.cols), dir); });
    }

    void fft_cols(ComplexGrid &g, FftDirection dir)
    {
        parallel_for(g.cols, [&](std::size_t b, std::size_t e)
                     {
            std::vector<cdouble> col(g.rows);
            for (std::size_t c = b; c < e; ++c)
            {
                for (std::size_t r = 0; r < g.rows; ++r)
                    col[r] = g(r, c);
                fft(col, dir);
                for (std::size_t r = 0; r < g.rows; ++r)
                    g(r, c) = col[r];
            } });
    }

    void fft2d(ComplexGrid &g, FftDirection dir)
    {
        fft_rows(g, dir);
        fft_cols(g, dir);
    }

    std::size_t next_pow2(std::size_t n)
    {
        std::size_t p = 1;
        while (p < n)
            p <<= 1;
        return p;
    }

    double bin_frequency(std::size_t k, std::size_t n, double fs)
    {
        const auto half = static_cast<long long>(n / 2);
        auto kk = static_cast<long long>(k);
        if (kk >= static_cast<long long>(n) - half)
            kk -= static_cast<long long>(n);
        return fs * static_cast<double>(kk) / static_cast<double>(n);
    }
}
