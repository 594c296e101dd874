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

#include "sarphys/parallel.hpp"
#include "sarphys/random.hpp"
#include "sarphys/sublook.hpp"
#include "support.hpp"

using namespace sarphys;
using namespace sarphys::sublook;
using echo::DopplerBand;
using echo::PointTarget;
using echo::Target;
using sarphys::testing::pixel_of;
using sarphys::testing::rel_rms;
using sarphys::testing::simulate_and_focus;

namespace
{
    const SensorParams kParams{};
    const double kBand = kParams.processed_doppler_bandwidth();

    // Upper or lower third of the processed Doppler band.
    DopplerBand third(int which)
    {
        const double lo = -0.5 * kBand + which * kBand / 3.0;
        return {lo, lo + kBand / 3.0};
    }

    const SlcImage &isotropic_slc()
    {
        static const SlcImage img = simulate_and_focus({PointTarget{10000.0, 0.0}});
        return img;
    }

    std::vector<double> look_energies(const SubLookStack &s)
    {
        std::vector<double> e;
        for (const auto &l : s.looks)
            e.push_back(l.energy());
        return e;
    }

    // Multiplies row i by exp(j 2 pi shift_bins i / n): a circular shift of
    // the azimuth spectrum by shift_bins.
    SlcImage spectral_shift(const SlcImage &slc, double shift_bins)
    {
        SlcImage out = slc;
        const double n = static_cast<double>(slc.n_azimuth());
        for (std::size_t i = 0; i < slc.n_azimuth(); ++i)
        {
            const cdouble ramp = std::polar(1.0, 2.0 * kPi * shift_bins * static_cast<double>(i) / n);
            for (auto &s : out.image.row(i))
                s = cfloat(cdouble(s) * ramp);
        }
        return out;
    }

    SlcImage crop_rows(const SlcImage &slc, std::size_t n)
    {
        ComplexImage img(n, slc.n_range());
        for (std::size_t i = 0; i < n; ++i)
            std::copy(slc.image.row(i).begin(), slc.image.row(i).end(), img.row(i).begin());
        return SlcImage::on_grid(std::move(img), slc.params, slc.first_azimuth_m, slc.first_range_m);
    }
}

TEST_CASE("doppler centroid")
{
    CHECK(std::abs(estimate_doppler_centroid(isotropic_slc())) <= kParams.prf_hz / 100.0);

    const auto shifted = spectral_shift(isotropic_slc(), static_cast<double>(isotropic_slc().n_azimuth()) / 4.0);
    CHECK(estimate_doppler_centroid(shifted) == doctest::Approx(kParams.prf_hz / 4.0).epsilon(0.04));
    CHECK(std::abs(estimate_doppler_centroid(shifted) - kParams.prf_hz / 4.0) <= kParams.prf_hz / 100.0);

    CHECK_THROWS(estimate_doppler_centroid(SlcImage::on_grid(ComplexImage(7, 4), kParams, 0.0, 1.0)));
    CHECK_THROWS_WITH(estimate_doppler_centroid(SlcImage::on_grid(ComplexImage(16, 4), kParams, 0.0, 1.0)),
                      doctest::Contains("zero-energy"));
}

TEST_CASE("doppler centroid of white noise stays near zero")
{
    // Repeated trials at 4096 pulses.
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        Rng rng(seed);
        ComplexImage img(4096, 4);
        for (auto &s : img.samples())
            s = cfloat(static_cast<float>(rng.normal()), static_cast<float>(rng.normal()));
        const double fc = estimate_doppler_centroid(SlcImage::on_grid(std::move(img), kParams, 0.0, 1.0));
        CHECK(std::abs(fc) <= kParams.prf_hz / 20.0);
    }
}

TEST_CASE("rect looks partition the source")
{
    const auto &slc = isotropic_slc();
    const auto stack = sublook_decompose(slc, 3, 0.0);
    REQUIRE(stack.size() == 3);

    // Edges ascending and spanning the processed Doppler band.
    REQUIRE(stack.band_edges_hz.size() == 4);
    CHECK(stack.band_edges_hz.front() == doctest::Approx(-0.5 * kBand));
    CHECK(stack.band_edges_hz.back() == doctest::Approx(0.5 * kBand));
    for (std::size_t i = 0; i + 1 < stack.band_edges_hz.size(); ++i)
        CHECK(stack.band_edges_hz[i] < stack.band_edges_hz[i + 1]);

    ComplexImage sum(slc.n_azimuth(), slc.n_range());
    for (const auto &l : stack.looks)
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum.samples()[i] += l.samples()[i];
    CHECK(rel_rms(sum.samples(), slc.image.samples()) < 1e-6);

    const auto e = look_energies(stack);
    const double total = slc.image.energy();
    CHECK(e[0] + e[1] + e[2] == doctest::Approx(total).epsilon(1e-6));
    for (double v : e)
        CHECK(v / total == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("band-limited target lands in its look")
{
    for (int which : {0, 2})
    {
        const auto slc = simulate_and_focus({PointTarget{10000.0, 0.0, 1.0, third(which)}});
        const auto e = look_energies(sublook_decompose(slc, 3, 0.0));
        CHECK(e[static_cast<std::size_t>(which)] / (e[0] + e[1] + e[2]) >= 0.95);
    }
}

TEST_CASE("hann weighted looks")
{
    const auto &slc = isotropic_slc();
    const auto e = look_energies(sublook_decompose(slc, 3, 0.0, LookWeighting::hann));
    const double total = slc.image.energy();
    // Tapered bands keep (3/8 of) each band's energy, equally split.
    for (double v : e)
        CHECK(v / total == doctest::Approx(0.125).epsilon(0.05));
}

TEST_CASE("shifting the spectrum by one band rotates the looks")
{
    const std::size_t n_looks = 4;
    const std::size_t rows = isotropic_slc().n_azimuth() / n_looks * n_looks;
    const auto slc = crop_rows(isotropic_slc(), rows);
    const double band_bins = static_cast<double>(rows / n_looks);
    const auto shifted = spectral_shift(slc, band_bins);

    const auto a = sublook_decompose(slc, n_looks, 0.0, LookWeighting::rect, kParams.prf_hz);
    const auto b = sublook_decompose(shifted, n_looks, 0.0, LookWeighting::rect, kParams.prf_hz);
    for (std::size_t i = 0; i < n_looks; ++i)
    {
        const auto moved = spectral_shift(a.look_slc(i), band_bins);
        CHECK(rel_rms(b.looks[(i + 1) % n_looks].samples(), moved.image.samples()) < 1e-5);
    }
}

TEST_CASE("decomposition errors")
{
    const auto &slc = isotropic_slc();
    CHECK_THROWS(sublook_decompose(slc, 1, 0.0));
    CHECK_THROWS_WITH(sublook_decompose(slc, slc.n_azimuth() + 1, 0.0), doctest::Contains("n_looks exceeds"));
    CHECK_THROWS(sublook_decompose(slc, 3, -0.5 * kParams.prf_hz));
    CHECK_NOTHROW(sublook_decompose(slc, 3, 0.5 * kParams.prf_hz));
    CHECK_THROWS(sublook_decompose(slc, 3, 0.0, LookWeighting::rect, 2.0 * kParams.prf_hz));
    CHECK_THROWS(sublook_rgb(sublook_decompose(slc, 2, 0.0)));
}

TEST_CASE("decomposition is independent of the thread count")
{
    set_thread_count(1);
    const auto a = sublook_decompose(isotropic_slc(), 3, 0.0);
    set_thread_count(5);
    const auto b = sublook_decompose(isotropic_slc(), 3, 0.0);
    set_thread_count(0);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(a.looks[i] == b.looks[i]);
}

TEST_CASE("sub-look colour composite")
{
    SUBCASE("isotropic target is grey")
    {
        const auto &slc = isotropic_slc();
        const auto rgb = sublook_rgb(sublook_decompose(slc, 3, 0.0));
        const auto [a, r] = pixel_of(slc, 0.0, 10000.0);
        const std::size_t px = a * rgb.cols + r;
        const float hi = std::max({rgb.channel[0][px], rgb.channel[1][px], rgb.channel[2][px]});
        const float lo = std::min({rgb.channel[0][px], rgb.channel[1][px], rgb.channel[2][px]});
        CHECK(hi > 0.0f);
        CHECK(hi / lo <= 1.1f);
    }
    SUBCASE("look-1 target is red and look-3 target is blue")
    {
        const std::vector<Target> t{PointTarget{9985.0, -20.0, 1.0, third(0)},
                                    PointTarget{10015.0, 20.0, 1.0, third(2)}};
        const auto slc = simulate_and_focus(t);
        const auto rgb = sublook_rgb(sublook_decompose(slc, 3, 0.0));
        const auto [ar, rr] = pixel_of(slc, -20.0, 9985.0);
        const std::size_t red = ar * rgb.cols + rr;
        CHECK(rgb.channel[0][red] >= 5.0f * std::max(rgb.channel[1][red], rgb.channel[2][red]));
        const auto [ab, rb] = pixel_of(slc, 20.0, 10015.0);
        const std::size_t blue = ab * rgb.cols + rb;
        CHECK(rgb.channel[2][blue] >= 5.0f * std::max(rgb.channel[0][blue], rgb.channel[1][blue]));
    }
    SUBCASE("all-zero stack")
    {
        SubLookStack zero;
        zero.looks.assign(3, ComplexImage(5, 6));
        const auto rgb = sublook_rgb(zero);
        for (const auto &ch : rgb.channel)
            CHECK(std::all_of(ch.begin(), ch.end(), [](float v) { return v == 0.0f; }));
    }
}
