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

#ifndef SARPHYS_SUBLOOK_HPP
#define SARPHYS_SUBLOOK_HPP

#include "sarphys/core.hpp"

#include <optional>
#include <vector>

namespace sarphys::sublook
{
    enum class LookWeighting
    {
        rect, // exact partition: looks sum to the source
        hann  // each band tapered; bins outside the processed band dropped
    };

    struct SubLookStack
    {
        std::vector<ComplexImage> looks;  // full grid size, band-pass (not decimated)
        std::vector<double> band_edges_hz; // looks.size() + 1 ascending edges
        double centroid_hz = 0.0;
        SensorParams source_params;
        double first_azimuth_m = 0.0;
        double first_range_m = 0.0;

        std::size_t size() const { return looks.size(); }
        SlcImage look_slc(std::size_t i) const;
    };

    // Circular centroid of the mean azimuth power spectrum, in (-PRF/2, PRF/2].
    // Spectra without a statistically significant direction (resultant below
    // four times its white-noise spread) report 0.
    double estimate_doppler_centroid(const SlcImage &slc);

    // Splits the azimuth spectrum, re-centered on centroid_hz, into n_looks
    // equal contiguous bands over bandwidth_hz (default: the processed Doppler
    // bandwidth). With rect weighting, bins beyond the outer edges belong to
    // the outer looks so the looks still sum to the source.
    SubLookStack sublook_decompose(const SlcImage &slc, std::size_t n_looks, double centroid_hz,
                                   LookWeighting weighting = LookWeighting::rect,
                                   std::optional<double> bandwidth_hz = std::nullopt);

    // |look_c| per channel, jointly stretched between the 1st and 99th
    // percentile of the pooled magnitudes.
    RgbImage sublook_rgb(const SubLookStack &stack);
}

#endif
