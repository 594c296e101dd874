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

#include "sarphys/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sarphys
{
    namespace
    {
        bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

        void require_positive(double v, const char *name)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                fail(std::string("invalid SensorParams: ") + name + " must be > 0");
        }
    }

    void SensorParams::validate() const
    {
        require_positive(carrier_freq_hz, "carrier_freq_hz");
        require_positive(chirp_bandwidth_hz, "chirp_bandwidth_hz");
        require_positive(pulse_duration_s, "pulse_duration_s");
        require_positive(range_sample_rate_hz, "range_sample_rate_hz");
        require_positive(prf_hz, "prf_hz");
        require_positive(platform_velocity_mps, "platform_velocity_mps");
        require_positive(antenna_length_m, "antenna_length_m");
        require_positive(center_slant_range_m, "center_slant_range_m");
        if (!(incidence_angle_deg > 0.0 && incidence_angle_deg < 90.0))
            fail("invalid SensorParams: incidence_angle_deg must lie in (0, 90)");
        if (range_sample_rate_hz < 1.1 * chirp_bandwidth_hz)
            fail("invalid SensorParams: range_sample_rate_hz < 1.1 * chirp_bandwidth_hz");
        if (prf_hz < 1.1 * doppler_bandwidth())
            fail("invalid SensorParams: prf_hz < 1.1 * doppler_bandwidth");
    }

    ComplexImage::ComplexImage(std::size_t n_azimuth, std::size_t n_range, std::vector<cfloat> samples)
        : n_az_(n_azimuth), n_rg_(n_range), samples_(std::move(samples))
    {
        if (samples_.size() != n_az_ * n_rg_)
            fail("ComplexImage: sample count does not match n_azimuth x n_range");
    }

    std::size_t ComplexImage::first_non_finite() const
    {
        for (std::size_t i = 0; i < samples_.size(); ++i)
            if (!std::isfinite(samples_[i].real()) || !std::isfinite(samples_[i].imag()))
                return i;
        return samples_.size();
    }

    double ComplexImage::energy() const
    {
        double e = 0.0;
        for (const auto &s : samples_)
            e += std::norm(cdouble(s));
        return e;
    }

    SlcImage SlcImage::on_grid(ComplexImage image, const SensorParams &params,
                               double first_azimuth_m, double first_range_m)
    {
        SlcImage s;
        s.image = std::move(image);
        s.params = params;
        s.azimuth_spacing_m = params.azimuth_spacing();
        s.range_spacing_m = params.range_spacing();
        s.first_azimuth_m = first_azimuth_m;
        s.first_range_m = first_range_m;
        return s;
    }

    void SlcImage::validate() const
    {
        params.validate();
        if (!close_rel(range_spacing_m, params.range_spacing(), 1e-9))
            fail("range_spacing_m inconsistent with range_sample_rate_hz");
        if (!close_rel(azimuth_spacing_m, params.azimuth_spacing(), 1e-9))
            fail("azimuth_spacing_m inconsistent with platform_velocity_mps / prf_hz");
        if (auto bad = image.first_non_finite(); bad != image.size())
        {
            std::ostringstream os;
            os << "non-finite sample at index " << bad;
            fail(os.str());
        }
    }

    void QuadPolImage::validate() const
    {
        for (const SlcImage *c : {&hh, &hv, &vh, &vv})
        {
            c->validate();
            if (c->n_azimuth() != hh.n_azimuth() || c->n_range() != hh.n_range())
                fail("quad-pol channels differ in dimensions");
            if (!(c->params == hh.params) || c->azimuth_spacing_m != hh.azimuth_spacing_m ||
                c->range_spacing_m != hh.range_spacing_m || c->first_azimuth_m != hh.first_azimuth_m ||
                c->first_range_m != hh.first_range_m)
                fail("quad-pol channels are not co-registered");
        }
        if (reciprocal)
        {
            auto a = hv.image.samples();
            auto b = vh.image.samples();
            for (std::size_t i = 0; i < a.size(); ++i)
            {
                const double scale = std::max(std::abs(cdouble(a[i])), std::abs(cdouble(b[i])));
                if (std::abs(cdouble(a[i]) - cdouble(b[i])) > 1e-6 * scale)
                    fail("reciprocity violated: HV != VH at sample " + std::to_string(i));
            }
        }
    }

    std::vector<unsigned char> RgbImage::to_rgb8() const
    {
        std::vector<unsigned char> out(rows * cols * 3);
        for (std::size_t i = 0; i < rows * cols; ++i)
            for (int c = 0; c < 3; ++c)
            {
                const float v = std::clamp(channel[c][i], 0.0f, 1.0f);
                out[3 * i + c] = static_cast<unsigned char>(std::lround(v * 255.0f));
            }
        return out;
    }

    double percentile(std::vector<double> values, double q)
    {
        if (values.empty())
            return 0.0;
        std::sort(values.begin(), values.end());
        const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] + frac * (values[hi] - values[lo]);
    }
}
