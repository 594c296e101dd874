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

// Shared fixtures and independent oracles for the test binaries.

#ifndef SARPHYS_TESTS_SUPPORT_HPP
#define SARPHYS_TESTS_SUPPORT_HPP

#include "sarphys/echo_sim.hpp"
#include "sarphys/focus.hpp"
#include "sarphys/polarimetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <unistd.h>
#include <vector>

namespace sarphys::testing
{
    inline SlcImage simulate_and_focus(const std::vector<echo::Target> &targets, WindowKind w = WindowKind::rect,
                                       const SensorParams &p = {}, const SceneExtent &e = {})
    {
        return focus::focus(echo::simulate_raw(targets, p, e), w);
    }

    // Nearest pixel of a ground position.
    inline std::pair<std::size_t, std::size_t> pixel_of(const SlcImage &img, double azimuth_m, double range_m)
    {
        return {static_cast<std::size_t>(std::lround((azimuth_m - img.first_azimuth_m) / img.azimuth_spacing_m)),
                static_cast<std::size_t>(std::lround((range_m - img.first_range_m) / img.range_spacing_m))};
    }

    inline double rel_rms(std::span<const cfloat> a, std::span<const cfloat> b)
    {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            num += std::norm(cdouble(a[i]) - cdouble(b[i]));
            den += std::norm(cdouble(b[i]));
        }
        return std::sqrt(num / den);
    }

    class TempDir
    {
    public:
        explicit TempDir(const std::string &tag)
            : path_(std::filesystem::temp_directory_path() /
                    ("sarphys-" + tag + "-" + std::to_string(::getpid())))
        {
            std::filesystem::remove_all(path_);
            std::filesystem::create_directories(path_);
        }
        ~TempDir() { std::filesystem::remove_all(path_); }
        TempDir(const TempDir &) = delete;
        TempDir &operator=(const TempDir &) = delete;

        std::filesystem::path operator/(const std::string &name) const { return path_ / name; }
        const std::filesystem::path &path() const { return path_; }

    private:
        std::filesystem::path path_;
    };

    // Cyclic Jacobi on a real symmetric matrix in long double. Returns the
    // eigenvalues; columns of v are eigenvectors.
    template <std::size_t N>
    std::array<long double, N> jacobi(std::array<std::array<long double, N>, N> a,
                                      std::array<std::array<long double, N>, N> &v)
    {
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                v[i][j] = i == j ? 1.0L : 0.0L;
        for (int sweep = 0; sweep < 100; ++sweep)
        {
            long double off = 0.0L;
            for (std::size_t p = 0; p < N; ++p)
                for (std::size_t q = p + 1; q < N; ++q)
                    off += a[p][q] * a[p][q];
            if (off < 1e-36L)
                break;
            for (std::size_t p = 0; p < N; ++p)
                for (std::size_t q = p + 1; q < N; ++q)
                {
                    if (a[p][q] == 0.0L)
                        continue;
                    const long double theta = (a[q][q] - a[p][p]) / (2.0L * a[p][q]);
                    const long double t = (theta >= 0 ? 1.0L : -1.0L) /
                                          (std::fabs(theta) + std::sqrt(theta * theta + 1.0L));
                    const long double c = 1.0L / std::sqrt(t * t + 1.0L), s = t * c;
                    for (std::size_t k = 0; k < N; ++k)
                    {
                        const long double akp = a[k][p], akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for (std::size_t k = 0; k < N; ++k)
                    {
                        const long double apk = a[p][k], aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                    for (std::size_t k = 0; k < N; ++k)
                    {
                        const long double vkp = v[k][p], vkq = v[k][q];
                        v[k][p] = c * vkp - s * vkq;
                        v[k][q] = s * vkp + c * vkq;
                    }
                }
        }
        std::array<long double, N> d;
        for (std::size_t i = 0; i < N; ++i)
            d[i] = a[i][i];
        return d;
    }

    // T = A + jB as the real symmetric [[A, -B], [B, A]]; every eigenvalue of
    // T appears twice in the embedding.
    inline std::array<std::array<long double, 6>, 6> real_embedding(const polar::Matrix3c &t)
    {
        std::array<std::array<long double, 6>, 6> m{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
            {
                const long double re = t(i, j).real(), im = t(i, j).imag();
                m[i][j] = m[i + 3][j + 3] = re;
                m[i + 3][j] = im;
                m[i][j + 3] = -im;
            }
        return m;
    }

    // Eigenvalues of a Hermitian matrix, descending, from the embedding.
    inline std::array<long double, 3> oracle_eigenvalues(const polar::Matrix3c &t)
    {
        std::array<std::array<long double, 6>, 6> v;
        auto d = jacobi<6>(real_embedding(t), v);
        std::sort(d.begin(), d.end(), std::greater<>());
        return {d[0], d[2], d[4]};
    }

    // Nearest PSD matrix by clipping the spectrum of the embedding.
    inline polar::Matrix3c oracle_psd(const polar::Matrix3c &t)
    {
        std::array<std::array<long double, 6>, 6> v;
        const auto d = jacobi<6>(real_embedding(t), v);
        std::array<std::array<long double, 6>, 6> m{};
        for (std::size_t k = 0; k < 6; ++k)
        {
            if (d[k] <= 0.0L)
                continue;
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t j = 0; j < 6; ++j)
                    m[i][j] += d[k] * v[i][k] * v[j][k];
        }
        polar::Matrix3c out;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                out(i, j) = cdouble(static_cast<double>(m[i][j]), static_cast<double>(m[i + 3][j]));
        return out;
    }
}

#endif
