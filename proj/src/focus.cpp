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

#include "sarphys/focus.hpp"
#include "sarphys/fft.hpp"
#include "sarphys/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sarphys::focus
{
    namespace
    {
        void normalize_energy(std::vector<cdouble> &v)
        {
            double e = 0.0;
            for (const auto &x : v)
                e += std::norm(x);
            if (e > 0.0)
            {
                const double s = 1.0 / std::sqrt(e);
                for (auto &x : v)
                    x *= s;
            }
        }

        std::size_t chirp_half_length(const SensorParams &p)
        {
            return static_cast<std::size_t>(std::floor(0.5 * p.pulse_duration_s * p.range_sample_rate_hz + 1e-9));
        }

        std::size_t azimuth_half_length(const SensorParams &p, double r)
        {
            return static_cast<std::size_t>(
                std::floor((echo::illuminated_half_aperture(p, r) + 1e-9) / p.azimuth_spacing()));
        }

        double sinc(double x)
        {
            if (std::abs(x) < 1e-12)
                return 1.0;
            return std::sin(kPi * x) / (kPi * x);
        }

        // Response of a flat spectrum over [lo, hi], relative to the peak of a
        // full-band response; offset_time is in the axis' time variable.
        cdouble band_kernel(double offset_time, double lo, double hi, double full_band)
        {
            const double width = hi - lo;
            const double mid = 0.5 * (lo + hi);
            return (width / full_band) * sinc(width * offset_time) * std::polar(1.0, 2.0 * kPi * mid * offset_time);
        }

        [[noreturn]] void no_peak() { fail("no dominant peak"); }

        // 16x upsampled magnitude of line[peak - kContext .. peak + kContext].
        std::vector<double> upsampled_magnitude(std::span<const cdouble> line, std::size_t peak)
        {
            if (peak < kContext || peak + kContext >= line.size())
                fail("peak on border (insufficient context)");
            const std::size_t m = 2 * kContext + 1;
            std::vector<cdouble> seg(line.begin() + static_cast<std::ptrdiff_t>(peak - kContext),
                                     line.begin() + static_cast<std::ptrdiff_t>(peak + kContext + 1));
            fft(seg, FftDirection::forward);
            const std::size_t big = kUpsample * m;
            std::vector<cdouble> spec(big);
            const std::size_t half = (m - 1) / 2; // m is odd: no Nyquist bin to split
            for (std::size_t k = 0; k <= half; ++k)
                spec[k] = seg[k];
            for (std::size_t k = half + 1; k < m; ++k)
                spec[big - m + k] = seg[k];
            fft(spec, FftDirection::inverse);
            std::vector<double> mag(big);
            for (std::size_t i = 0; i < big; ++i)
                mag[i] = std::abs(spec[i]) * static_cast<double>(kUpsample);
            return mag;
        }
    }

    MatchedFilter::MatchedFilter(std::span<const cdouble> replica, std::size_t center, std::size_t signal_length)
        : n_(signal_length), m_(replica.size()), center_(center)
    {
        if (m_ == 0 || center_ >= m_)
            fail("matched filter replica is empty or its center is out of range");
        fft_n_ = next_pow2(n_ + m_ - 1);
        std::vector<cdouble> h(fft_n_);
        for (std::size_t k = 0; k < m_; ++k)
        {
            const auto u = static_cast<long long>(k) - static_cast<long long>(center_);
            const auto idx = static_cast<std::size_t>((u + static_cast<long long>(fft_n_)) % static_cast<long long>(fft_n_));
            h[idx] = replica[k];
        }
        fft(h, FftDirection::forward);
        for (auto &x : h)
            x = std::conj(x);
        conj_spectrum_ = std::move(h);
    }

    std::vector<cdouble> MatchedFilter::correlate(std::span<const cdouble> x) const
    {
        if (x.size() != n_)
            fail("matched filter input length mismatch");
        std::vector<cdouble> buf(fft_n_);
        std::copy(x.begin(), x.end(), buf.begin());
        fft(buf, FftDirection::forward);
        for (std::size_t k = 0; k < fft_n_; ++k)
            buf[k] *= conj_spectrum_[k];
        fft(buf, FftDirection::inverse);
        return buf;
    }

    std::vector<cdouble> MatchedFilter::apply(std::span<const cdouble> x) const
    {
        auto buf = correlate(x);
        buf.resize(n_);
        return buf;
    }

    std::vector<cdouble> MatchedFilter::apply_full(std::span<const cdouble> x) const
    {
        const auto buf = correlate(x);
        const std::size_t lead = m_ - 1 - center_; // negative lags wrap to the end
        std::vector<cdouble> out(n_ + m_ - 1);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = buf[(i + fft_n_ - lead) % fft_n_];
        return out;
    }

    std::vector<cdouble> chirp_replica(const SensorParams &p, WindowKind window)
    {
        const std::size_t h = chirp_half_length(p);
        const auto w = sarphys::window(window, 2 * h + 1);
        std::vector<cdouble> r(2 * h + 1);
        for (std::size_t k = 0; k < r.size(); ++k)
        {
            const double u = (static_cast<double>(k) - static_cast<double>(h)) / p.range_sample_rate_hz;
            r[k] = w[k] * std::polar(1.0, kPi * p.chirp_rate() * u * u);
        }
        normalize_energy(r);
        return r;
    }

    std::vector<cdouble> azimuth_replica(const SensorParams &p, double slant_range_m, WindowKind window)
    {
        const std::size_t h = azimuth_half_length(p, slant_range_m);
        const auto w = sarphys::window(window, 2 * h + 1);
        std::vector<cdouble> r(2 * h + 1);
        for (std::size_t k = 0; k < r.size(); ++k)
        {
            const double x = (static_cast<double>(k) - static_cast<double>(h)) * p.azimuth_spacing();
            const double dr = std::hypot(slant_range_m, x) - slant_range_m;
            r[k] = w[k] * std::polar(1.0, -4.0 * kPi * dr / p.wavelength());
        }
        normalize_energy(r);
        return r;
    }

    ImageGrid image_grid(const SensorParams &p, const SceneExtent &extent)
    {
        const auto raw = echo::raw_geometry(p, extent);
        const auto half_az =
            static_cast<std::size_t>(std::ceil(0.5 * extent.azimuth_window_m / p.azimuth_spacing())) + kImageMargin;
        const auto half_rg =
            static_cast<std::size_t>(std::ceil(0.5 * extent.range_window_m / p.range_spacing())) + kImageMargin;

        ImageGrid g;
        g.az0 = raw.center_azimuth - std::min(half_az, raw.center_azimuth);
        g.rg0 = raw.center_range - std::min(half_rg, raw.center_range);
        const std::size_t az1 = std::min(raw.n_azimuth, raw.center_azimuth + half_az + 1);
        const std::size_t rg1 = std::min(raw.n_range, raw.center_range + half_rg + 1);
        g.n_azimuth = az1 - g.az0;
        g.n_range = rg1 - g.rg0;
        g.center_azimuth = raw.center_azimuth - g.az0;
        g.center_range = raw.center_range - g.rg0;
        g.first_azimuth_m = raw.first_azimuth_m + static_cast<double>(g.az0) * p.azimuth_spacing();
        g.first_range_m = raw.first_range_m + static_cast<double>(g.rg0) * p.range_spacing();
        return g;
    }

    echo::RawData range_compress(const echo::RawData &raw, WindowKind window)
    {
        raw.params.validate();
        const auto replica = chirp_replica(raw.params, window);
        const std::size_t n = raw.data.n_range();
        if (replica.size() > n)
            fail("chirp longer than range window");
        const MatchedFilter mf(replica, (replica.size() - 1) / 2, n);

        echo::RawData out = raw;
        parallel_for(raw.data.n_azimuth(), [&](std::size_t b, std::size_t e)
                     {
            std::vector<cdouble> row(n);
            for (std::size_t i = b; i < e; ++i)
            {
                auto src = raw.data.row(i);
                for (std::size_t j = 0; j < n; ++j)
                    row[j] = cdouble(src[j]);
                const auto y = mf.apply(row);
                auto dst = out.data.row(i);
                for (std::size_t j = 0; j < n; ++j)
                    dst[j] = cfloat(static_cast<float>(y[j].real()), static_cast<float>(y[j].imag()));
            } });
        return out;
    }

    SlcImage azimuth_compress(const echo::RawData &rc, WindowKind window)
    {
        const SensorParams &p = rc.params;
        p.validate();
        const double far = p.center_slant_range_m + 0.5 * rc.extent.range_window_m;
        const double migration = echo::migration_cells(p, far);
        if (migration > echo::kMaxMigrationCells)
        {
            std::ostringstream os;
            os << "migration bound violated (" << migration << " cells > " << echo::kMaxMigrationCells << ")";
            throw Error(ErrorKind::physics_bound, os.str());
        }
        const auto raw_geo = echo::raw_geometry(p, rc.extent);
        if (raw_geo.n_azimuth != rc.data.n_azimuth() || raw_geo.n_range != rc.data.n_range())
            fail("range-compressed data does not match the acquisition geometry");
        const ImageGrid g = image_grid(p, rc.extent);
        const std::size_t n_az = rc.data.n_azimuth();

        ComplexImage out(g.n_azimuth, g.n_range);
        parallel_for(g.n_range, [&](std::size_t b, std::size_t e)
                     {
            std::vector<cdouble> column(n_az);
            for (std::size_t c = b; c < e; ++c)
            {
                const std::size_t j = g.rg0 + c;
                const auto replica = azimuth_replica(p, rc.range_of(static_cast<double>(j)), window);
                const MatchedFilter mf(replica, (replica.size() - 1) / 2, n_az);
                for (std::size_t i = 0; i < n_az; ++i)
                    column[i] = cdouble(rc.data(i, j));
                const auto y = mf.apply(column);
                for (std::size_t i = 0; i < g.n_azimuth; ++i)
                {
                    const cdouble v = y[g.az0 + i];
                    out(i, c) = cfloat(static_cast<float>(v.real()), static_cast<float>(v.imag()));
                }
            } });
        return SlcImage::on_grid(std::move(out), p, g.first_azimuth_m, g.first_range_m);
    }

    SlcImage focus(const echo::RawData &raw, WindowKind window)
    {
        return azimuth_compress(range_compress(raw, window), window);
    }

    SlcImage ideal_psf(std::span<const echo::Target> targets, const SensorParams &p, const SceneExtent &extent)
    {
        p.validate();
        const ImageGrid g = image_grid(p, extent);
        ComplexGrid acc(g.n_azimuth, g.n_range);
        const double doppler_band = p.processed_doppler_bandwidth();
        const double n_chirp = static_cast<double>(2 * chirp_half_length(p) + 1);

        auto add = [&](double r0, double x0, cdouble refl, const echo::Anisotropy &anis)
        {
            if (!echo::inside_extent(r0, x0, p, extent))
                fail("target outside extent");
            double az_lo = -0.5 * doppler_band, az_hi = 0.5 * doppler_band;
            double rg_lo = -0.5 * p.chirp_bandwidth_hz, rg_hi = 0.5 * p.chirp_bandwidth_hz;
            if (const auto *d = std::get_if<echo::DopplerBand>(&anis))
            {
                az_lo = std::max(az_lo, d->f_lo_hz);
                az_hi = std::min(az_hi, d->f_hi_hz);
            }
            else if (const auto *rb = std::get_if<echo::RangeBand>(&anis))
            {
                rg_lo = rb->f_lo_hz;
                rg_hi = rb->f_hi_hz;
            }
            if (!(az_hi > az_lo))
                return;
            const double n_az = static_cast<double>(2 * azimuth_half_length(p, r0) + 1);
            const cdouble amp = refl * std::sqrt(n_chirp * n_az) * std::polar(1.0, -4.0 * kPi * r0 / p.wavelength());

            std::vector<cdouble> az_kernel(g.n_azimuth), rg_kernel(g.n_range);
            for (std::size_t i = 0; i < g.n_azimuth; ++i)
            {
                const double dt = (g.first_azimuth_m + static_cast<double>(i) * p.azimuth_spacing() - x0) /
                                  p.platform_velocity_mps;
                az_kernel[i] = band_kernel(dt, az_lo, az_hi, doppler_band);
            }
            for (std::size_t j = 0; j < g.n_range; ++j)
            {
                const double dt = 2.0 * (g.first_range_m + static_cast<double>(j) * p.range_spacing() - r0) / kSpeedOfLight;
                rg_kernel[j] = band_kernel(dt, rg_lo, rg_hi, p.chirp_bandwidth_hz);
            }
            for (std::size_t i = 0; i < g.n_azimuth; ++i)
                for (std::size_t j = 0; j < g.n_range; ++j)
                    acc(i, j) += amp * az_kernel[i] * rg_kernel[j];
        };

        for (const auto &t : targets)
        {
            if (const auto *pt = std::get_if<echo::PointTarget>(&t))
                add(pt->slant_range_m, pt->azimuth_m, pt->reflectivity, pt->anisotropy);
            else
            {
                const auto &mp = std::get<echo::MultipathTarget>(t);
                const auto ranges = echo::multipath_ranges(mp, p);
                for (int b = 0; b < 3; ++b)
                    add(ranges[b], mp.azimuth_m, mp.bounce_reflectivities[b], echo::Isotropic{});
            }
        }
        return SlcImage::on_grid(acc.to_image(), p, g.first_azimuth_m, g.first_range_m);
    }

    AxisResponse measure_axis(std::span<const cdouble> line, std::size_t peak)
    {
        const auto mag = upsampled_magnitude(line, peak);
        const std::size_t center = kUpsample * kContext;

        std::size_t pk = center - kUpsample;
        for (std::size_t f = center - kUpsample; f <= center + kUpsample; ++f)
            if (mag[f] > mag[pk])
                pk = f;
        const double peak_mag = mag[pk];
        if (!(peak_mag > 0.0))
            no_peak();

        const double thr = peak_mag / std::sqrt(2.0);
        std::size_t l = pk;
        while (l > 0 && mag[l] >= thr)
            --l;
        std::size_t r = pk;
        while (r + 1 < mag.size() && mag[r] >= thr)
            ++r;
        if (mag[l] >= thr || mag[r] >= thr)
            no_peak();
        const double left = static_cast<double>(l) + (thr - mag[l]) / (mag[l + 1] - mag[l]);
        const double right = static_cast<double>(r) - (thr - mag[r]) / (mag[r - 1] - mag[r]);

        // First nulls bound the main lobe.
        std::size_t nl = pk;
        while (nl > 0 && mag[nl - 1] < mag[nl])
            --nl;
        std::size_t nr = pk;
        while (nr + 1 < mag.size() && mag[nr + 1] < mag[nr])
            ++nr;
        if (nl == 0 || nr + 1 == mag.size())
            no_peak();

        const std::size_t span = kUpsample * kSidelobeSpan;
        double side = 0.0;
        for (std::size_t f = (pk > span ? pk - span : 0); f <= nl; ++f)
            side = std::max(side, mag[f]);
        for (std::size_t f = nr; f <= std::min(mag.size() - 1, pk + span); ++f)
            side = std::max(side, mag[f]);

        AxisResponse a;
        a.irw_samples = (right - left) / static_cast<double>(kUpsample);
        a.pslr_db = 20.0 * std::log10(std::max(side, 1e-300) / peak_mag);
        a.peak_offset = (static_cast<double>(pk) - static_cast<double>(center)) / static_cast<double>(kUpsample);
        a.peak_magnitude = peak_mag;
        return a;
    }

    FocusReport measure_response(const SlcImage &img, std::size_t approx_azimuth, std::size_t approx_range)
    {
        const auto &im = img.image;
        if (approx_azimuth >= im.n_azimuth() || approx_range >= im.n_range())
            fail("peak outside image");
        std::size_t pa = approx_azimuth, pr = approx_range;
        const std::size_t a0 = approx_azimuth > 3 ? approx_azimuth - 3 : 0;
        const std::size_t r0 = approx_range > 3 ? approx_range - 3 : 0;
        for (std::size_t i = a0; i <= std::min(im.n_azimuth() - 1, approx_azimuth + 3); ++i)
            for (std::size_t j = r0; j <= std::min(im.n_range() - 1, approx_range + 3); ++j)
                if (std::abs(im(i, j)) > std::abs(im(pa, pr)))
                {
                    pa = i;
                    pr = j;
                }

        std::vector<cdouble> row(im.n_range()), col(im.n_azimuth());
        for (std::size_t j = 0; j < im.n_range(); ++j)
            row[j] = cdouble(im(pa, j));
        for (std::size_t i = 0; i < im.n_azimuth(); ++i)
            col[i] = cdouble(im(i, pr));
        const AxisResponse rg = measure_axis(row, pr);
        const AxisResponse az = measure_axis(col, pa);

        FocusReport rep;
        rep.peak_azimuth = pa;
        rep.peak_range = pr;
        rep.peak_magnitude = std::abs(cdouble(im(pa, pr)));
        rep.range_irw_m = rg.irw_samples * img.range_spacing_m;
        rep.azimuth_irw_m = az.irw_samples * img.azimuth_spacing_m;
        rep.range_pslr_db = rg.pslr_db;
        rep.azimuth_pslr_db = az.pslr_db;
        rep.pslr_db = std::max(rg.pslr_db, az.pslr_db);
        return rep;
    }

    std::vector<double> detect_range_responses(const SlcImage &img, std::size_t azimuth, double rel_threshold)
    {
        const auto &im = img.image;
        if (azimuth >= im.n_azimuth())
            fail("azimuth index outside image");
        std::vector<cdouble> row(im.n_range());
        double peak = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j)
        {
            row[j] = cdouble(im(azimuth, j));
            peak = std::max(peak, std::abs(row[j]));
        }
        std::vector<double> out;
        if (!(peak > 0.0))
            return out;
        for (std::size_t j = 1; j + 1 < row.size(); ++j)
        {
            const double m = std::abs(row[j]);
            if (m < rel_threshold * peak || m <= std::abs(row[j - 1]) || m < std::abs(row[j + 1]))
                continue;
            double offset = 0.0;
            if (j >= kContext && j + kContext < row.size())
            {
                try
                {
                    offset = measure_axis(row, j).peak_offset;
                }
                catch (const Error &)
                {
                    offset = 0.0; // not isolated enough to interpolate
                }
            }
            out.push_back(img.range_of(static_cast<double>(j) + offset));
        }
        return out;
    }

    std::pair<std::size_t, std::size_t> global_peak(const ComplexImage &img)
    {
        std::size_t best = 0;
        float best_mag = -1.0f;
        auto s = img.samples();
        for (std::size_t i = 0; i < s.size(); ++i)
            if (std::abs(s[i]) > best_mag)
            {
                best_mag = std::abs(s[i]);
                best = i;
            }
        if (img.n_range() == 0)
            return {0, 0};
        return {best / img.n_range(), best % img.n_range()};
    }
}
