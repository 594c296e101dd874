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

#ifndef SARPHYS_ECHO_SIM_HPP
#define SARPHYS_ECHO_SIM_HPP

#include "sarphys/core.hpp"
#include "sarphys/io.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace sarphys::echo
{
    struct Isotropic
    {
    };

    // Reflectivity confined to [f_lo_hz, f_hi_hz] along slow-time (Doppler)
    // or fast-time (range) frequency.
    struct DopplerBand
    {
        double f_lo_hz, f_hi_hz;
    };

    struct RangeBand
    {
        double f_lo_hz, f_hi_hz;
    };

    using Anisotropy = std::variant<Isotropic, DopplerBand, RangeBand>;

    struct PointTarget
    {
        double slant_range_m = 0.0;
        double azimuth_m = 0.0;
        cdouble reflectivity{1.0, 0.0};
        Anisotropy anisotropy = Isotropic{};
    };

    // Bridge-like scatterer over a reflecting surface: direct, double and
    // triple bounce returns at the same azimuth.
    struct MultipathTarget
    {
        double deck_slant_range_m = 0.0;
        double azimuth_m = 0.0;
        double height_m = 0.0;
        std::array<cdouble, 3> bounce_reflectivities{cdouble(1.0), cdouble(1.0), cdouble(1.0)};
    };

    using Target = std::variant<PointTarget, MultipathTarget>;

    // Raw echo matrix: rows are pulses, columns fast-time samples. Column j
    // corresponds to two-way delay 2 * (first_range_m + j * range_spacing) / c.
    struct RawData
    {
        ComplexImage data;
        SensorParams params;
        SceneExtent extent;
        double first_azimuth_m = 0.0;
        double first_range_m = 0.0;

        double azimuth_of(double i) const { return first_azimuth_m + i * params.azimuth_spacing(); }
        double range_of(double j) const { return first_range_m + j * params.range_spacing(); }
    };

    struct RawGeometry
    {
        std::size_t n_azimuth = 0;
        std::size_t n_range = 0;
        double first_azimuth_m = 0.0;
        double first_range_m = 0.0;
        // Pixel of the scene center (azimuth 0, center_slant_range_m).
        std::size_t center_azimuth = 0;
        std::size_t center_range = 0;
    };

    // Grid large enough to record every echo of every in-extent target.
    // The scene center always falls on an integer pixel.
    RawGeometry raw_geometry(const SensorParams &params, const SceneExtent &extent);

    // Half-length of the synthetic aperture (3 dB beam footprint) at R0.
    double illuminated_half_aperture(const SensorParams &params, double slant_range_m);
    double aperture_time(const SensorParams &params, double slant_range_m);

    // (direct, double, triple) bounce slant ranges, spaced h cos(theta_i).
    std::array<double, 3> multipath_ranges(const MultipathTarget &t, const SensorParams &params);

    // Range migration over the aperture of a target at R0, in range cells.
    double migration_cells(const SensorParams &params, double slant_range_m);
    // Maximum migration_cells over all targets (all bounces).
    double migration_check(std::span<const Target> targets, const SensorParams &params, const SceneExtent &extent);

    inline constexpr double kMaxMigrationCells = 0.5;

    bool inside_extent(double slant_range_m, double azimuth_m, const SensorParams &params, const SceneExtent &extent);

    RawData simulate_raw(std::span<const Target> targets, const SensorParams &params, const SceneExtent &extent);

    // Adds circular white Gaussian noise with E|n|^2 = sigma^2.
    void add_noise(RawData &raw, double sigma, std::uint64_t seed);

    void write_raw(const RawData &raw, const std::filesystem::path &path, const json &extra = json::object());
    RawData read_raw(const std::filesystem::path &path);
}

#endif
