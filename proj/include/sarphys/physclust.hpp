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

#ifndef SARPHYS_PHYSCLUST_HPP
#define SARPHYS_PHYSCLUST_HPP

#include "sarphys/timefreq.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sarphys::clust
{
    struct FeatureMatrix
    {
        std::size_t rows = 0, cols = 0;
        std::vector<double> data; // row-major
        bool normalized = false;

        std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

        // Rows scaled to unit L2 norm; a zero row is rejected with its index.
        static FeatureMatrix from_rows(std::size_t rows, std::size_t cols, std::vector<double> data,
                                       bool normalize = true);
    };

    // Per sample: band energies as fractions of the patch energy, then
    // (range, azimuth) flatness, L2-normalized. Invariant to a common gain.
    FeatureMatrix build_features(std::span<const timefreq::Spectrogram> specs);

    struct ClusterModel
    {
        std::size_t k = 0;
        std::size_t dim = 0;
        std::vector<double> centroids; // k x dim
        std::vector<std::size_t> assignments;
        double inertia = 0.0;
        std::uint64_t seed = 0;
        std::size_t iterations = 0;
        std::vector<double> inertia_history; // after every assignment step

        std::span<const double> centroid(std::size_t c) const { return {centroids.data() + c * dim, dim}; }
    };

    // k-means++ seeding from Rng(seed), then Lloyd iterations until the
    // assignment is a fixpoint or max_iter assignment steps ran. An emptied
    // cluster is re-seeded on the sample farthest from its own centroid.
    ClusterModel kmeans(const FeatureMatrix &feats, std::size_t k, std::uint64_t seed, std::size_t max_iter);

    double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b);

    double squared_distance(std::span<const double> a, std::span<const double> b);
}

#endif
