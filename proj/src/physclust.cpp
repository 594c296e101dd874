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

#include "sarphys/physclust.hpp"
#include "sarphys/parallel.hpp"
#include "sarphys/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace sarphys::clust
{
    namespace
    {
        double comb2(double n) { return 0.5 * n * (n - 1.0); }

        std::size_t nearest(const FeatureMatrix &f, std::size_t r, const std::vector<double> &centroids, std::size_t k,
                            double &dist)
        {
            std::size_t best = 0;
            dist = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c)
            {
                const double d = squared_distance(f.row(r), {centroids.data() + c * f.cols, f.cols});
                if (d < dist)
                {
                    dist = d;
                    best = c;
                }
            }
            return best;
        }
    }

    double squared_distance(std::span<const double> a, std::span<const double> b)
    {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            d += (a[i] - b[i]) * (a[i] - b[i]);
        return d;
    }

    FeatureMatrix FeatureMatrix::from_rows(std::size_t rows, std::size_t cols, std::vector<double> data, bool normalize)
    {
        if (data.size() != rows * cols)
            fail("feature data does not match rows x cols");
        for (std::size_t i = 0; i < data.size(); ++i)
            if (!std::isfinite(data[i]))
                fail("non-finite feature in sample " + std::to_string(i / std::max<std::size_t>(cols, 1)));
        FeatureMatrix f;
        f.rows = rows;
        f.cols = cols;
        f.data = std::move(data);
        f.normalized = normalize;
        if (normalize)
            for (std::size_t r = 0; r < rows; ++r)
            {
                double norm = 0.0;
                for (std::size_t c = 0; c < cols; ++c)
                    norm += f.data[r * cols + c] * f.data[r * cols + c];
                if (!(norm > 0.0))
                    fail("zero-energy sample at index " + std::to_string(r));
                const double s = 1.0 / std::sqrt(norm);
                for (std::size_t c = 0; c < cols; ++c)
                    f.data[r * cols + c] *= s;
            }
        return f;
    }

    FeatureMatrix build_features(std::span<const timefreq::Spectrogram> specs)
    {
        if (specs.empty())
            fail("no spectrograms to build features from");
        const std::size_t nr = specs[0].n_rbands, na = specs[0].n_abands;
        const std::size_t cols = nr * na + 2;
        std::vector<double> data;
        data.reserve(specs.size() * cols);
        for (std::size_t i = 0; i < specs.size(); ++i)
        {
            const auto &s = specs[i];
            if (s.n_rbands != nr || s.n_abands != na)
                fail("spectrogram " + std::to_string(i) + " has a different band shape");
            if (!(s.total() > 0.0))
                fail("zero-energy sample at index " + std::to_string(i));
            // Energy fractions, so the flatness pair keeps a gain-free weight.
            const auto d = timefreq::behavior_descriptor(s);
            const double total = s.total();
            for (double e : s.energies)
                data.push_back(e / total);
            data.push_back(d.range_flatness);
            data.push_back(d.azimuth_flatness);
        }
        return FeatureMatrix::from_rows(specs.size(), cols, std::move(data), true);
    }

    ClusterModel kmeans(const FeatureMatrix &feats, std::size_t k, std::uint64_t seed, std::size_t max_iter)
    {
        const std::size_t n = feats.rows, dim = feats.cols;
        if (k == 0)
            fail("k must be >= 1");
        if (k > n)
            fail("k exceeds the number of samples");
        if (max_iter == 0)
            fail("max_iter must be >= 1");

        ClusterModel m;
        m.k = k;
        m.dim = dim;
        m.seed = seed;
        m.centroids.assign(k * dim, 0.0);

        // k-means++ seeding.
        Rng rng(seed);
        std::vector<bool> chosen(n, false);
        std::vector<double> d2(n, std::numeric_limits<double>::infinity());
        std::size_t pick = static_cast<std::size_t>(rng.below(n));
        for (std::size_t c = 0; c < k; ++c)
        {
            if (c > 0)
            {
                double total = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    total += d2[i];
                if (total > 0.0)
                {
                    const double target = rng.uniform() * total;
                    double cum = 0.0;
                    pick = n - 1;
                    for (std::size_t i = 0; i < n; ++i)
                    {
                        cum += d2[i];
                        if (cum > target && d2[i] > 0.0)
                        {
                            pick = i;
                            break;
                        }
                    }
                }
                else
                {
                    pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), false) - chosen.begin());
                }
            }
            chosen[pick] = true;
            std::copy(feats.row(pick).begin(), feats.row(pick).end(), m.centroids.begin() + static_cast<std::ptrdiff_t>(c * dim));
            for (std::size_t i = 0; i < n; ++i)
                d2[i] = std::min(d2[i], squared_distance(feats.row(i), m.centroid(c)));
        }

        std::vector<std::size_t> assign(n, k); // k marks "unassigned"
        std::vector<double> dist(n, 0.0);
        for (std::size_t it = 1; it <= max_iter; ++it)
        {
            std::vector<std::size_t> next(n);
            parallel_for(n, [&](std::size_t b, std::size_t e)
                         {
                for (std::size_t i = b; i < e; ++i)
                    next[i] = nearest(feats, i, m.centroids, k, dist[i]); });
            double inertia = 0.0;
            for (double d : dist)
                inertia += d;
            m.inertia_history.push_back(inertia);
            m.inertia = inertia;
            m.iterations = it;
            const bool converged = next == assign;
            assign = std::move(next);
            if (converged || it == max_iter)
                break;

            std::vector<std::size_t> count(k, 0);
            for (auto a : assign)
                ++count[a];
            std::vector<bool> taken(n, false);
            for (std::size_t c = 0; c < k; ++c)
            {
                if (count[c] > 0)
                    continue;
                std::size_t far = n;
                for (std::size_t i = 0; i < n; ++i)
                    if (!taken[i] && (far == n || dist[i] > dist[far]))
                        far = i;
                taken[far] = true;
                std::copy(feats.row(far).begin(), feats.row(far).end(),
                          m.centroids.begin() + static_cast<std::ptrdiff_t>(c * dim));
            }
            std::vector<double> sums(k * dim, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t d = 0; d < dim; ++d)
                    sums[assign[i] * dim + d] += feats.data[i * dim + d];
            for (std::size_t c = 0; c < k; ++c)
                if (count[c] > 0)
                    for (std::size_t d = 0; d < dim; ++d)
                        m.centroids[c * dim + d] = sums[c * dim + d] / static_cast<double>(count[c]);
        }
        m.assignments = std::move(assign);
        return m;
    }

    double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b)
    {
        if (a.size() != b.size())
            fail("label sequences differ in length");
        if (a.size() < 2)
            fail("adjusted Rand index needs at least 2 samples");
        std::map<std::pair<std::size_t, std::size_t>, double> table;
        std::map<std::size_t, double> rows, cols;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            table[{a[i], b[i]}] += 1.0;
            rows[a[i]] += 1.0;
            cols[b[i]] += 1.0;
        }
        double index = 0.0, sum_a = 0.0, sum_b = 0.0;
        for (const auto &[key, v] : table)
            index += comb2(v);
        for (const auto &[key, v] : rows)
            sum_a += comb2(v);
        for (const auto &[key, v] : cols)
            sum_b += comb2(v);
        const double expected = sum_a * sum_b / comb2(static_cast<double>(a.size()));
        const double max_index = 0.5 * (sum_a + sum_b);
        if (max_index == expected)
            return 1.0; // both partitions trivial and identical in structure
        return (index - expected) / (max_index - expected);
    }
}
