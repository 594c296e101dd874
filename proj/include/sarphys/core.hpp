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

#ifndef SARPHYS_CORE_HPP
#define SARPHYS_CORE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sarphys
{
    inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact
    inline constexpr double kPi = 3.141592653589793238462643383279502884;

    // Ratio between the 3 dB azimuth beamwidth and lambda / La. The simulator
    // illuminates a target only inside this beamwidth, so a rect-weighted
    // azimuth aperture has an impulse response width of exactly La / 2.
    inline constexpr double kBeamwidthFactor = 0.886;

    using cfloat = std::complex<float>;
    using cdouble = std::complex<double>;

    enum class ErrorKind
    {
        invalid_input, // malformed data, violated invariant
        physics_bound, // e.g. range migration above the no-RCMC limit
        io             // filesystem failure
    };

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
    };

    [[noreturn]] inline void fail(const std::string &what) { throw Error(ErrorKind::invalid_input, what); }

    // Acquisition physics of a stripmap pass.
    struct SensorParams
    {
        double carrier_freq_hz = 9.6e9;
        double chirp_bandwidth_hz = 100e6;
        double pulse_duration_s = 10e-6;
        double range_sample_rate_hz = 120e6;
        double prf_hz = 200.0;
        double platform_velocity_mps = 150.0;
        double antenna_length_m = 2.0;
        double center_slant_range_m = 10e3;
        double incidence_angle_deg = 35.0;

        double wavelength() const { return kSpeedOfLight / carrier_freq_hz; }
        double chirp_rate() const { return chirp_bandwidth_hz / pulse_duration_s; }
        double doppler_bandwidth() const { return 2.0 * platform_velocity_mps / antenna_length_m; }
        // Doppler band actually illuminated (3 dB beamwidth).
        double processed_doppler_bandwidth() const { return kBeamwidthFactor * doppler_bandwidth(); }
        double range_spacing() const { return kSpeedOfLight / (2.0 * range_sample_rate_hz); }
        double azimuth_spacing() const { return platform_velocity_mps / prf_hz; }

        // Throws Error("invalid SensorParams: ...") when an invariant fails.
        void validate() const;

        bool operator==(const SensorParams &) const = default;
    };

    // Row-major (azimuth-major) complex64 raster.
    class ComplexImage
    {
    public:
        ComplexImage() = default;
        ComplexImage(std::size_t n_azimuth, std::size_t n_range)
            : n_az_(n_azimuth), n_rg_(n_range), samples_(n_azimuth * n_range) {}
        ComplexImage(std::size_t n_azimuth, std::size_t n_range, std::vector<cfloat> samples);

        std::size_t n_azimuth() const { return n_az_; }
        std::size_t n_range() const { return n_rg_; }
        std::size_t size() const { return samples_.size(); }
        bool empty() const { return samples_.empty(); }

        cfloat &operator()(std::size_t az, std::size_t rg) { return samples_[az * n_rg_ + rg]; }
        const cfloat &operator()(std::size_t az, std::size_t rg) const { return samples_[az * n_rg_ + rg]; }

        std::span<cfloat> row(std::size_t az) { return {samples_.data() + az * n_rg_, n_rg_}; }
        std::span<const cfloat> row(std::size_t az) const { return {samples_.data() + az * n_rg_, n_rg_}; }

        std::span<cfloat> samples() { return samples_; }
        std::span<const cfloat> samples() const { return samples_; }

        // Index of the first NaN/Inf sample, or size() when all are finite.
        std::size_t first_non_finite() const;
        double energy() const;

        bool operator==(const ComplexImage &) const = default;

    private:
        std::size_t n_az_ = 0;
        std::size_t n_rg_ = 0;
        std::vector<cfloat> samples_;
    };

    // Imaged area, centered on center_slant_range_m and azimuth 0.
    struct SceneExtent
    {
        double range_window_m = 100.0;
        double azimuth_window_m = 100.0;

        bool operator==(const SceneExtent &) const = default;
    };

    // Focused single-look complex image. Pixel (i, j) sits at azimuth
    // first_azimuth_m + i * azimuth_spacing_m and slant range
    // first_range_m + j * range_spacing_m.
    struct SlcImage
    {
        ComplexImage image;
        SensorParams params;
        double azimuth_spacing_m = 0.0;
        double range_spacing_m = 0.0;
        double first_azimuth_m = 0.0;
        double first_range_m = 0.0;

        static SlcImage on_grid(ComplexImage image, const SensorParams &params,
                                double first_azimuth_m, double first_range_m);

        std::size_t n_azimuth() const { return image.n_azimuth(); }
        std::size_t n_range() const { return image.n_range(); }
        double azimuth_of(double az_index) const { return first_azimuth_m + az_index * azimuth_spacing_m; }
        double range_of(double rg_index) const { return first_range_m + rg_index * range_spacing_m; }

        void validate() const;
    };

    // Co-registered HH, HV, VH, VV channels.
    struct QuadPolImage
    {
        SlcImage hh, hv, vh, vv;
        bool reciprocal = false; // HV == VH assumed

        void validate() const;
    };

    // Planar 3-channel float raster, values in [0, 1] once stretched.
    struct RgbImage
    {
        std::size_t rows = 0, cols = 0;
        std::vector<float> channel[3];

        RgbImage() = default;
        RgbImage(std::size_t r, std::size_t c) : rows(r), cols(c)
        {
            for (auto &ch : channel)
                ch.assign(r * c, 0.0f);
        }

        // Interleaved 8-bit RGB, round-to-nearest.
        std::vector<unsigned char> to_rgb8() const;
    };

    // Linear-interpolated percentile (q in [0, 100]) of values.
    double percentile(std::vector<double> values, double q);
}

#endif
