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

#include "sarphys/timefreq.hpp"
#include "sarphys/fft.hpp"

#include <algorithm>
#include <cmath>

namespace sarphys::timefreq
{
    namespace
    {
        // Weight of each FFT bin in each band along one axis.
        std::vector<std::vector<double>> band_weights(std::size_t n_bins, double fs, double span, std::size_t n_bands,
                                                      BandTiling tiling, std::vector<double> &centers)
        {
            std::vector<std::vector<double>> w(n_bands, std::vector<double>(n_bins, 0.0));
            centers.assign(n_bands, 0.0);
            if (tiling == BandTiling::partition)
            {
                // Bin k stands for [f_k - df/2, f_k + df/2); a bin straddling an
                // edge is shared by overlap length. Weights sum to 1 per bin.
                const double step = span / static_cast<double>(n_bands);
                const double df = fs / static_cast<double>(n_bins);
                for (std::size_t b = 0; b < n_bands; ++b)
                    centers[b] = -0.5 * span + (static_cast<double>(b) + 0.5) * step;
                for (std::size_t k = 0; k < n_bins; ++k)
                {
                    const double lo = (bin_frequency(k, n_bins, fs) - 0.5 * df + 0.5 * span) / step;
                    const double hi = lo + df / step;
                    for (std::size_t b = 0; b < n_bands; ++b)
                    {
                        // Outer bands extend to infinity on their open side.
                        const double b_lo = b == 0 ? -1e300 : static_cast<double>(b);
                        const double b_hi = b + 1 == n_bands ? 1e300 : static_cast<double>(b + 1);
                        const double overlap = std::min(hi, b_hi) - std::max(lo, b_lo);
                        if (overlap > 0.0)
                            w[b][k] = overlap / (hi - lo);
                    }
                }
                return w;
            }
            // Bands of width 2 * step centered step apart across the span.
            const double step = span / static_cast<double>(n_bands + 1);
            for (std::size_t b = 0; b < n_bands; ++b)
            {
                centers[b] = -0.5 * span + static_cast<double>(b + 1) * step;
                for (std::size_t k = 0; k < n_bins; ++k)
                {
                    const double rel = (bin_frequency(k, n_bins, fs) - centers[b]) / (2.0 * step); // in [-0.5, 0.5)
                    if (rel >= -0.5 && rel < 0.5)
                        w[b][k] = 0.5 + 0.5 * std::cos(2.0 * kPi * rel);
                }
            }
            return w;
        }
    }

    double Spectrogram::total() const
    {
        double t = 0.0;
        for (double e : energies)
            t += e;
        return t;
    }

    Spectrogram spectrogram(const SlcImage &slc, std::pair<std::size_t, std::size_t> patch_origin,
                            std::pair<std::size_t, std::size_t> patch_size, std::size_t n_rbands,
                            std::size_t n_abands, BandTiling tiling)
    {
        const auto [az0, rg0] = patch_origin;
        const auto [naz, nrg] = patch_size;
        if (naz == 0 || nrg == 0 || az0 + naz > slc.n_azimuth() || rg0 + nrg > slc.n_range())
            fail("spectrogram patch out of bounds");
        if (n_rbands == 0 || n_abands == 0 || n_rbands > nrg || n_abands > naz)
            fail("band counts must lie in [1, patch dimension]");

        ComplexGrid g(naz, nrg);
        for (std::size_t i = 0; i < naz; ++i)
            for (std::size_t j = 0; j < nrg; ++j)
                g(i, j) = cdouble(slc.image(az0 + i, rg0 + j));
        fft2d(g, FftDirection::forward);

        Spectrogram s;
        s.n_rbands = n_rbands;
        s.n_abands = n_abands;
        s.patch_origin = patch_origin;
        s.patch_size = patch_size;
        const auto rw = band_weights(nrg, slc.params.range_sample_rate_hz, slc.params.chirp_bandwidth_hz, n_rbands,
                                     tiling, s.range_band_centers_hz);
        const auto aw = band_weights(naz, slc.params.prf_hz, slc.params.processed_doppler_bandwidth(), n_abands,
                                     tiling, s.azimuth_band_centers_hz);

        const double inv_n = 1.0 / static_cast<double>(naz * nrg);
        s.energies.assign(n_rbands * n_abands, 0.0);
        for (std::size_t i = 0; i < naz; ++i)
            for (std::size_t j = 0; j < nrg; ++j)
            {
                const double p = std::norm(g(i, j)) * inv_n;
                if (p == 0.0)
                    continue;
                for (std::size_t rb = 0; rb < n_rbands; ++rb)
                {
                    if (rw[rb][j] == 0.0)
                        continue;
                    for (std::size_t ab = 0; ab < n_abands; ++ab)
                        s.energies[rb * n_abands + ab] += rw[rb][j] * aw[ab][i] * p;
                }
            }
        return s;
    }

    std::pair<std::size_t, std::size_t> centered_patch_origin(const SlcImage &slc, std::size_t azimuth,
                                                              std::size_t range, std::size_t patch)
    {
        if (patch > slc.n_azimuth() || patch > slc.n_range())
            fail("patch larger than image");
        auto place = [patch](std::size_t c, std::size_t n)
        {
            const std::size_t half = patch / 2;
            const std::size_t start = c > half ? c - half : 0;
            return std::min(start, n - patch);
        };
        return {place(azimuth, slc.n_azimuth()), place(range, slc.n_range())};
    }

    SpectroProjection project(const Spectrogram &spec)
    {
        SpectroProjection p;
        p.range_profile.assign(spec.n_rbands, 0.0);
        p.azimuth_profile.assign(spec.n_abands, 0.0);
        for (std::size_t r = 0; r < spec.n_rbands; ++r)
            for (std::size_t a = 0; a < spec.n_abands; ++a)
            {
                p.range_profile[r] += spec.at(r, a);
                p.azimuth_profile[a] += spec.at(r, a);
            }
        return p;
    }

    double flatness(const std::vector<double> &profile)
    {
        if (profile.empty())
            fail("flatness of an empty profile");
        double total = 0.0, log_sum = 0.0;
        for (double v : profile)
        {
            if (v < 0.0)
                fail("flatness requires non-negative energies");
            if (v == 0.0)
                return 0.0;
            total += v;
            log_sum += std::log(v);
        }
        const double n = static_cast<double>(profile.size());
        const double geo = std::exp(log_sum / n);
        return std::clamp(geo / (total / n), 0.0, 1.0);
    }

    BehaviorDescriptor behavior_descriptor(const Spectrogram &spec)
    {
        if (!(spec.total() > 0.0))
            fail("behavior descriptor of a zero-energy spectrogram");
        const auto p = project(spec);
        return {flatness(p.range_profile), flatness(p.azimuth_profile)};
    }
}
