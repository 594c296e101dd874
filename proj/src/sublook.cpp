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

#include "sarphys/sublook.hpp"
#include "sarphys/fft.hpp"
#include "sarphys/parallel.hpp"

#include <cmath>

namespace sarphys::sublook
{
    namespace
    {
        double wrap_frequency(double f, double prf)
        {
            // into [-prf/2, prf/2)
            double w = std::fmod(f + 0.5 * prf, prf);
            if (w < 0.0)
                w += prf;
            return w - 0.5 * prf;
        }
    }

    SlcImage SubLookStack::look_slc(std::size_t i) const
    {
        return SlcImage::on_grid(looks.at(i), source_params, first_azimuth_m, first_range_m);
    }

    double estimate_doppler_centroid(const SlcImage &slc)
    {
        const std::size_t n = slc.n_azimuth();
        if (n < 8)
            fail("doppler centroid estimation needs at least 8 azimuth samples");
        ComplexGrid g(slc.image);
        fft_cols(g, FftDirection::forward);

        std::vector<double> power(n, 0.0);
        for (std::size_t k = 0; k < n; ++k)
        {
            double acc = 0.0;
            for (std::size_t c = 0; c < g.cols; ++c)
                acc += std::norm(g(k, c));
            power[k] = acc / static_cast<double>(g.cols);
        }
        double total = 0.0;
        cdouble resultant = 0.0;
        for (std::size_t k = 0; k < n; ++k)
        {
            total += power[k];
            resultant += power[k] * std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
        }
        if (!(total > 0.0))
            fail("zero-energy image has no doppler centroid");

        const double mean = total / static_cast<double>(n);
        double var = 0.0;
        for (double p : power)
            var += (p - mean) * (p - mean);
        const double cv = std::sqrt(var / static_cast<double>(n)) / mean;
        const double r_bar = std::abs(resultant) / total;
        if (r_bar < 4.0 * cv / std::sqrt(static_cast<double>(n)))
            return 0.0;

        double f = slc.params.prf_hz * std::arg(resultant) / (2.0 * kPi);
        if (f <= -0.5 * slc.params.prf_hz)
            f += slc.params.prf_hz;
        return f;
    }

    SubLookStack sublook_decompose(const SlcImage &slc, std::size_t n_looks, double centroid_hz,
                                   LookWeighting weighting, std::optional<double> bandwidth_hz)
    {
        const double prf = slc.params.prf_hz;
        const std::size_t n = slc.n_azimuth();
        if (n_looks < 2)
            fail("sub-look decomposition needs n_looks >= 2");
        if (n_looks > n)
            fail("n_looks exceeds n_azimuth");
        if (!(centroid_hz > -0.5 * prf && centroid_hz <= 0.5 * prf))
            fail("doppler centroid outside (-PRF/2, PRF/2]");
        const double band = bandwidth_hz.value_or(slc.params.processed_doppler_bandwidth());
        if (!(band > 0.0 && band <= prf * (1.0 + 1e-12)))
            fail("sub-look bandwidth must lie in (0, PRF]");

        SubLookStack stack;
        stack.centroid_hz = centroid_hz;
        stack.source_params = slc.params;
        stack.first_azimuth_m = slc.first_azimuth_m;
        stack.first_range_m = slc.first_range_m;
        const double step = band / static_cast<double>(n_looks);
        for (std::size_t m = 0; m <= n_looks; ++m)
            stack.band_edges_hz.push_back(centroid_hz - 0.5 * band + static_cast<double>(m) * step);

        // Per-bin look index and weight.
        std::vector<std::size_t> look(n);
        std::vector<double> weight(n, 1.0);
        for (std::size_t k = 0; k < n; ++k)
        {
            const double rel = wrap_frequency(bin_frequency(k, n, prf) - centroid_hz, prf);
            const double pos = (rel + 0.5 * band) / step; // in band units
            const double idx = std::floor(pos + 1e-9);
            const bool outside = idx < 0.0 || idx >= static_cast<double>(n_looks);
            look[k] = static_cast<std::size_t>(std::clamp(idx, 0.0, static_cast<double>(n_looks - 1)));
            if (weighting == LookWeighting::hann)
                weight[k] = outside ? 0.0 : 0.5 - 0.5 * std::cos(2.0 * kPi * (pos - idx));
        }

        ComplexGrid spectrum(slc.image);
        fft_cols(spectrum, FftDirection::forward);
        for (std::size_t l = 0; l < n_looks; ++l)
        {
            ComplexGrid g(spectrum.rows, spectrum.cols);
            for (std::size_t k = 0; k < n; ++k)
                if (look[k] == l)
                    for (std::size_t c = 0; c < g.cols; ++c)
                        g(k, c) = weight[k] * spectrum(k, c);
            fft_cols(g, FftDirection::inverse);
            stack.looks.push_back(g.to_image());
        }
        return stack;
    }

    RgbImage sublook_rgb(const SubLookStack &stack)
    {
        if (stack.size() != 3)
            fail("sub-look RGB composite requires exactly 3 looks");
        const auto &l0 = stack.looks[0];
        RgbImage rgb(l0.n_azimuth(), l0.n_range());
        std::vector<double> pooled;
        pooled.reserve(3 * l0.size());
        for (const auto &look : stack.looks)
            for (const auto &s : look.samples())
                pooled.push_back(std::abs(cdouble(s)));
        const double lo = percentile(pooled, 1.0);
        const double hi = percentile(pooled, 99.0);
        if (!(hi > lo))
            return rgb;
        for (int c = 0; c < 3; ++c)
        {
            auto s = stack.looks[static_cast<std::size_t>(c)].samples();
            for (std::size_t i = 0; i < s.size(); ++i)
                rgb.channel[c][i] =
                    static_cast<float>(std::clamp((std::abs(cdouble(s[i])) - lo) / (hi - lo), 0.0, 1.0));
        }
        return rgb;
    }
}
