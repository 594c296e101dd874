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

#ifndef SARPHYS_FOCUS_HPP
#define SARPHYS_FOCUS_HPP

#include "sarphys/core.hpp"
#include "sarphys/echo_sim.hpp"
#include "sarphys/window.hpp"

#include <span>
#include <vector>

namespace sarphys::focus
{
    // Correlates signals with a fixed replica through zero-padded FFTs:
    //   y[i] = sum_u x[i + u] * conj(replica[center + u])
    // The transform length is the next power of two >= n + m - 1, so the
    // circular product equals the linear correlation.
    class MatchedFilter
    {
    public:
        MatchedFilter(std::span<const cdouble> replica, std::size_t center, std::size_t signal_length);

        // Output aligned with the input (length n).
        std::vector<cdouble> apply(std::span<const cdouble> x) const;
        // Complete linear correlation (length n + m - 1); element 0 is lag
        // -(m - 1 - center).
        std::vector<cdouble> apply_full(std::span<const cdouble> x) const;

        std::size_t fft_length() const { return fft_n_; }
        std::span<const cdouble> conj_spectrum() const { return conj_spectrum_; }

    private:
        std::vector<cdouble> correlate(std::span<const cdouble> x) const;

        std::size_t n_, m_, center_, fft_n_;
        std::vector<cdouble> conj_spectrum_;
    };

    // Unit-energy replicas; the peak sample sits at index (size - 1) / 2.
    std::vector<cdouble> chirp_replica(const SensorParams &p, WindowKind window);
    std::vector<cdouble> azimuth_replica(const SensorParams &p, double slant_range_m, WindowKind window);

    // Cells kept on each side of the scene extent in focused images.
    inline constexpr std::size_t kImageMargin = 40;

    // Focused image window inside the raw grid.
    struct ImageGrid
    {
        std::size_t az0 = 0, rg0 = 0;       // offset in the raw grid
        std::size_t n_azimuth = 0, n_range = 0;
        double first_azimuth_m = 0.0, first_range_m = 0.0;
        std::size_t center_azimuth = 0, center_range = 0; // scene center pixel
    };

    ImageGrid image_grid(const SensorParams &p, const SceneExtent &extent);

    echo::RawData range_compress(const echo::RawData &raw, WindowKind window = WindowKind::rect);
    // Per-gate azimuth correlation, cropped to image_grid().
    SlcImage azimuth_compress(const echo::RawData &rc, WindowKind window = WindowKind::rect);
    SlcImage focus(const echo::RawData &raw, WindowKind window = WindowKind::rect);

    // Separable sinc responses with the gain of the unit-energy filters.
    SlcImage ideal_psf(std::span<const echo::Target> targets, const SensorParams &p, const SceneExtent &extent);

    struct AxisResponse
    {
        double irw_samples = 0.0;
        double pslr_db = 0.0;
        double peak_offset = 0.0; // sub-sample peak location relative to the input peak
        double peak_magnitude = 0.0;
    };

    // -3 dB width and PSLR along a 1-D cut, from 16x FFT interpolation.
    AxisResponse measure_axis(std::span<const cdouble> line, std::size_t peak);

    inline constexpr std::size_t kContext = 32;    // samples needed each side
    inline constexpr std::size_t kSidelobeSpan = 20;
    inline constexpr std::size_t kUpsample = 16;

    struct FocusReport
    {
        std::size_t peak_azimuth = 0, peak_range = 0;
        double peak_magnitude = 0.0;
        double range_irw_m = 0.0;
        double azimuth_irw_m = 0.0;
        double pslr_db = 0.0; // worse of the two axes
        double range_pslr_db = 0.0;
        double azimuth_pslr_db = 0.0;
    };

    // Refines approx_peak to the local maximum within +-3 pixels first.
    FocusReport measure_response(const SlcImage &img, std::size_t approx_azimuth, std::size_t approx_range);

    // Sub-pixel slant ranges (m) of the local maxima of row `azimuth` that
    // reach rel_threshold of the row maximum, ascending.
    std::vector<double> detect_range_responses(const SlcImage &img, std::size_t azimuth, double rel_threshold);

    // Index of the largest magnitude sample (first one on ties).
    std::pair<std::size_t, std::size_t> global_peak(const ComplexImage &img);
}

#endif
