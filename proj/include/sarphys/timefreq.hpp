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

#ifndef SARPHYS_TIMEFREQ_HPP
#define SARPHYS_TIMEFREQ_HPP

#include "sarphys/core.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace sarphys::timefreq
{
    enum class BandTiling
    {
        // Disjoint rectangular bands over the chirp bandwidth (range) and the
        // processed Doppler bandwidth (azimuth). Bins outside those spans
        // belong to the outer bands and a bin straddling an edge is split by
        // overlap, so band energies sum to the patch energy.
        partition,
        // Hann-weighted bands with 50% overlap; for display only.
        overlap_hann
    };

    struct Spectrogram
    {
        std::size_t n_rbands = 0, n_abands = 0;
        std::vector<double> energies; // n_rbands x n_abands, row-major
        std::vector<double> range_band_centers_hz;
        std::vector<double> azimuth_band_centers_hz;
        std::pair<std::size_t, std::size_t> patch_origin{0, 0}; // (azimuth, range)
        std::pair<std::size_t, std::size_t> patch_size{0, 0};

        double at(std::size_t rband, std::size_t aband) const { return energies[rband * n_abands + aband]; }
        double total() const;
    };

    struct SpectroProjection
    {
        std::vector<double> range_profile;   // row sums
        std::vector<double> azimuth_profile; // column sums
    };

    struct BehaviorDescriptor
    {
        double range_flatness = 0.0;
        double azimuth_flatness = 0.0;
    };

    inline constexpr std::size_t kDefaultPatch = 64;

    Spectrogram spectrogram(const SlcImage &slc, std::pair<std::size_t, std::size_t> patch_origin,
                            std::pair<std::size_t, std::size_t> patch_size, std::size_t n_rbands,
                            std::size_t n_abands, BandTiling tiling = BandTiling::partition);

    // Patch of kDefaultPatch x kDefaultPatch centered on (azimuth, range),
    // clamped into the image.
    std::pair<std::size_t, std::size_t> centered_patch_origin(const SlcImage &slc, std::size_t azimuth,
                                                              std::size_t range, std::size_t patch = kDefaultPatch);

    SpectroProjection project(const Spectrogram &spec);

    // Spectral flatness (geometric / arithmetic mean) of a profile; 0 when any
    // entry is zero.
    double flatness(const std::vector<double> &profile);

    BehaviorDescriptor behavior_descriptor(const Spectrogram &spec);
}

#endif
