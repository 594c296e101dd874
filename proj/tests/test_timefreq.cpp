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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sarphys/random.hpp"
#include "sarphys/timefreq.hpp"
#include "support.hpp"

using namespace sarphys;
using namespace sarphys::timefreq;
using echo::DopplerBand;
using echo::PointTarget;
using echo::RangeBand;
using sarphys::testing::pixel_of;
using sarphys::testing::simulate_and_focus;

namespace
{
    const SensorParams kParams{};

    Spectrogram target_spectrogram(const echo::Anisotropy &a, std::size_t bands = 3)
    {
        const auto slc = simulate_and_focus({PointTarget{10000.0, 0.0, 1.0, a}});
        const auto [az, rg] = pixel_of(slc, 0.0, 10000.0);
        return spectrogram(slc, centered_patch_origin(slc, az, rg), {kDefaultPatch, kDefaultPatch}, bands, bands);
    }

    SlcImage noise_slc(std::uint64_t seed, std::size_t n_az, std::size_t n_rg)
    {
        Rng rng(seed);
        ComplexImage img(n_az, n_rg);
        for (auto &s : img.samples())
            s = cfloat(static_cast<float>(rng.normal()), static_cast<float>(rng.normal()));
        return SlcImage::on_grid(std::move(img), kParams, 0.0, 9950.0);
    }

    double patch_energy(const SlcImage &slc, std::pair<std::size_t, std::size_t> o, std::size_t n)
    {
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                e += std::norm(cdouble(slc.image(o.first + i, o.second + j)));
        return e;
    }

    Spectrogram grid(std::size_t r, std::size_t a, std::vector<double> e)
    {
        Spectrogram s;
        s.n_rbands = r;
        s.n_abands = a;
        s.energies = std::move(e);
        return s;
    }
}

TEST_CASE("band energies partition the patch energy")
{
    const auto slc = noise_slc(4, 90, 80);
    for (auto [nr, na] : {std::pair<std::size_t, std::size_t>{3, 3}, {1, 1}, {4, 2}, {7, 5}})
        for (std::size_t n : {16u, 33u, 64u})
        {
            const std::pair<std::size_t, std::size_t> o{10, 7};
            const auto s = spectrogram(slc, o, {n, n}, nr, na);
            CHECK(s.total() == doctest::Approx(patch_energy(slc, o, n)).epsilon(1e-6));
            CHECK(std::all_of(s.energies.begin(), s.energies.end(), [](double v) { return v >= 0.0; }));
            const auto p = project(s);
            double rs = 0.0, as = 0.0;
            for (double v : p.range_profile)
                rs += v;
            for (double v : p.azimuth_profile)
                as += v;
            CHECK(rs == doctest::Approx(s.total()).epsilon(1e-6));
            CHECK(as == doctest::Approx(s.total()).epsilon(1e-6));
        }
}

TEST_CASE("isotropic target has a flat spectrogram")
{
    const auto s = target_spectrogram(echo::Isotropic{});
    const auto [lo, hi] = std::minmax_element(s.energies.begin(), s.energies.end());
    CHECK(*hi / *lo <= 1.1);
    const auto d = behavior_descriptor(s);
    CHECK(d.range_flatness >= 0.9);
    CHECK(d.azimuth_flatness >= 0.9);
    CHECK(s.range_band_centers_hz.size() == 3);
    CHECK(s.azimuth_band_centers_hz[1] == doctest::Approx(0.0));
}

TEST_CASE("band-limited targets concentrate along the limited axis")
{
    const double bp = kParams.processed_doppler_bandwidth();
    const auto s = target_spectrogram(DopplerBand{bp / 6.0, bp / 2.0});
    const auto p = project(s);
    CHECK(p.azimuth_profile[2] >= 0.9 * s.total());
    const auto d = behavior_descriptor(s);
    CHECK(d.azimuth_flatness <= 0.3);
    CHECK(d.range_flatness >= 0.9);

    const double b = kParams.chirp_bandwidth_hz;
    const auto r = target_spectrogram(RangeBand{-b / 2.0, -b / 6.0});
    CHECK(project(r).range_profile[0] >= 0.9 * r.total());
    CHECK(behavior_descriptor(r).range_flatness <= 0.3);
    CHECK(behavior_descriptor(r).azimuth_flatness >= 0.9);
}

TEST_CASE("zero patch")
{
    const auto slc = SlcImage::on_grid(ComplexImage(64, 64), kParams, 0.0, 9950.0);
    const auto s = spectrogram(slc, {0, 0}, {64, 64}, 3, 3);
    CHECK(s.total() == 0.0);
    CHECK_THROWS_WITH(behavior_descriptor(s), doctest::Contains("zero-energy"));
}

TEST_CASE("spectrogram argument checks")
{
    const auto slc = noise_slc(1, 40, 40);
    CHECK_THROWS_WITH(spectrogram(slc, {10, 0}, {32, 32}, 3, 3), doctest::Contains("out of bounds"));
    CHECK_THROWS_WITH(spectrogram(slc, {0, 9}, {32, 32}, 3, 3), doctest::Contains("out of bounds"));
    CHECK_THROWS(spectrogram(slc, {0, 0}, {4, 4}, 5, 3));
    CHECK_THROWS(spectrogram(slc, {0, 0}, {8, 8}, 0, 3));
    CHECK(centered_patch_origin(slc, 0, 39, 16) == std::pair<std::size_t, std::size_t>{0, 24});
    CHECK(centered_patch_origin(slc, 20, 20, 16) == std::pair<std::size_t, std::size_t>{12, 12});
    CHECK_THROWS(centered_patch_origin(slc, 20, 20, 64));
}

TEST_CASE("translation and amplitude behaviour")
{
    // A circular shift of the patch only changes spectral phases.
    const auto slc = noise_slc(12, 48, 48);
    ComplexImage rolled(48, 48);
    for (std::size_t i = 0; i < 48; ++i)
        for (std::size_t j = 0; j < 48; ++j)
            rolled((i + 5) % 48, (j + 11) % 48) = slc.image(i, j);
    const auto a = spectrogram(slc, {0, 0}, {48, 48}, 3, 4);
    const auto b = spectrogram(SlcImage::on_grid(rolled, kParams, 0.0, 9950.0), {0, 0}, {48, 48}, 3, 4);
    for (std::size_t k = 0; k < a.energies.size(); ++k)
        CHECK(b.energies[k] == doctest::Approx(a.energies[k]).epsilon(1e-9));

    // Moving a focused target inside a fixed patch.
    const auto single = simulate_and_focus({PointTarget{10000.0, 0.0}});
    const auto [az, rg] = pixel_of(single, 0.0, 10000.0);
    const auto o = centered_patch_origin(single, az, rg);
    const auto moved = simulate_and_focus({PointTarget{10000.0 + 3 * kParams.range_spacing(), 1.5}});
    const auto s0 = spectrogram(single, o, {64, 64}, 3, 3), s1 = spectrogram(moved, o, {64, 64}, 3, 3);
    for (std::size_t k = 0; k < s0.energies.size(); ++k)
        CHECK(s1.energies[k] == doctest::Approx(s0.energies[k]).epsilon(0.01));

    // Scaling the data by a scales energies by a^2; descriptors unchanged.
    SlcImage scaled = slc;
    for (auto &s : scaled.image.samples())
        s *= 3.0f;
    const auto c = spectrogram(scaled, {0, 0}, {48, 48}, 3, 4);
    for (std::size_t k = 0; k < a.energies.size(); ++k)
        CHECK(c.energies[k] == doctest::Approx(9.0 * a.energies[k]).epsilon(1e-6));
    CHECK(behavior_descriptor(c).range_flatness == doctest::Approx(behavior_descriptor(a).range_flatness));
    CHECK(behavior_descriptor(c).azimuth_flatness == doctest::Approx(behavior_descriptor(a).azimuth_flatness));
}

TEST_CASE("projection and flatness")
{
    const auto uniform = grid(3, 3, std::vector<double>(9, 2.0));
    const auto p = project(uniform);
    CHECK(p.range_profile == std::vector<double>{6.0, 6.0, 6.0});
    CHECK(p.azimuth_profile == std::vector<double>{6.0, 6.0, 6.0});
    CHECK(behavior_descriptor(uniform).range_flatness == doctest::Approx(1.0));
    CHECK(behavior_descriptor(uniform).azimuth_flatness == doctest::Approx(1.0));

    std::vector<double> one_hot(9, 0.0);
    one_hot[5] = 1.0; // rband 1, aband 2
    const auto q = project(grid(3, 3, one_hot));
    CHECK(q.range_profile == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(q.azimuth_profile == std::vector<double>{0.0, 0.0, 1.0});

    // All energy in one Doppler band, spread evenly over range.
    std::vector<double> column(9, 0.0);
    column[1] = column[4] = column[7] = 1.0;
    const auto d = behavior_descriptor(grid(3, 3, column));
    CHECK(d.azimuth_flatness == 0.0);
    CHECK(d.range_flatness == doctest::Approx(1.0));

    // (0.5 * 0.25 * 0.25)^(1/3) / (1/3)
    CHECK(flatness({0.5, 0.25, 0.25}) == doctest::Approx(0.9449).epsilon(1e-4));
    CHECK_THROWS(flatness({}));
    CHECK_THROWS(flatness({1.0, -1.0}));

    Rng rng(6);
    for (int i = 0; i < 500; ++i)
    {
        std::vector<double> e(12);
        for (auto &v : e)
            v = rng.uniform() * (rng.uniform() < 0.1 ? 0.0 : 1.0) + 1e-300;
        const auto b = behavior_descriptor(grid(4, 3, e));
        CHECK(b.range_flatness >= 0.0);
        CHECK(b.range_flatness <= 1.0);
        CHECK(b.azimuth_flatness >= 0.0);
        CHECK(b.azimuth_flatness <= 1.0);
    }
}

TEST_CASE("overlapping hann tiling")
{
    const auto slc = noise_slc(3, 64, 64);
    const auto s = spectrogram(slc, {0, 0}, {64, 64}, 4, 4, BandTiling::overlap_hann);
    CHECK(s.energies.size() == 16);
    CHECK(std::all_of(s.energies.begin(), s.energies.end(), [](double v) { return v > 0.0; }));
    CHECK(std::is_sorted(s.azimuth_band_centers_hz.begin(), s.azimuth_band_centers_hz.end()));
}
