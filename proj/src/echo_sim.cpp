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

#include "sarphys/echo_sim.hpp"
#include "sarphys/fft.hpp"
#include "sarphys/parallel.hpp"
#include "sarphys/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sarphys::echo
{
    namespace
    {
        // One elementary return after multipath expansion.
        struct Scatterer
        {
            double range_m;
            double azimuth_m;
            cdouble reflectivity;
            Anisotropy anisotropy;
        };

        bool same_band(const Anisotropy &a, const Anisotropy &b)
        {
            if (a.index() != b.index())
                return false;
            if (const auto *da = std::get_if<DopplerBand>(&a))
            {
                const auto &db = std::get<DopplerBand>(b);
                return da->f_lo_hz == db.f_lo_hz && da->f_hi_hz == db.f_hi_hz;
            }
            if (const auto *ra = std::get_if<RangeBand>(&a))
            {
                const auto &rb = std::get<RangeBand>(b);
                return ra->f_lo_hz == rb.f_lo_hz && ra->f_hi_hz == rb.f_hi_hz;
            }
            return true;
        }

        void validate_extent(const SceneExtent &e)
        {
            if (!(e.range_window_m > 0.0) || !(e.azimuth_window_m > 0.0))
                fail("scene extent windows must be > 0");
        }

        void validate_band(const Anisotropy &a, const SensorParams &p)
        {
            auto check = [](double lo, double hi, double half, const char *axis)
            {
                if (!(lo < hi))
                    fail(std::string(axis) + " band requires f_lo < f_hi");
                if (lo < -half * (1 + 1e-12) || hi > half * (1 + 1e-12))
                    fail(std::string(axis) + " band exceeds the system bandwidth");
            };
            if (const auto *d = std::get_if<DopplerBand>(&a))
                check(d->f_lo_hz, d->f_hi_hz, 0.5 * p.doppler_bandwidth(), "doppler");
            else if (const auto *r = std::get_if<RangeBand>(&a))
                check(r->f_lo_hz, r->f_hi_hz, 0.5 * p.chirp_bandwidth_hz, "range");
        }

        std::vector<Scatterer> expand(std::span<const Target> targets, const SensorParams &params)
        {
            std::vector<Scatterer> out;
            for (const auto &t : targets)
            {
                if (const auto *pt = std::get_if<PointTarget>(&t))
                {
                    out.push_back({pt->slant_range_m, pt->azimuth_m, pt->reflectivity, pt->anisotropy});
                }
                else
                {
                    const auto &mp = std::get<MultipathTarget>(t);
                    const auto ranges = multipath_ranges(mp, params);
                    for (int b = 0; b < 3; ++b)
                        out.push_back({ranges[b], mp.azimuth_m, mp.bounce_reflectivities[b], Isotropic{}});
                }
            }
            return out;
        }

        void synthesize(ComplexGrid &acc, std::span<const Scatterer> scatterers, const std::vector<std::size_t> &members,
                        const SensorParams &p, const RawGeometry &g)
        {
            const double dr = p.range_spacing();
            const double da = p.azimuth_spacing();
            const double lambda = p.wavelength();
            const double kr = p.chirp_rate();
            const double half_width = 0.5 * p.pulse_duration_s * p.range_sample_rate_hz * (1.0 + 1e-12);

            parallel_for(g.n_azimuth, [&](std::size_t begin, std::size_t end)
                         {
                for (std::size_t i = begin; i < end; ++i)
                {
                    const double x = g.first_azimuth_m + static_cast<double>(i) * da;
                    for (std::size_t m : members)
                    {
                        const Scatterer &s = scatterers[m];
                        const double dx = x - s.azimuth_m;
                        if (std::abs(dx) > illuminated_half_aperture(p, s.range_m) + 1e-9)
                            continue;
                        const double r = std::hypot(s.range_m, dx);
                        const double jc = (r - g.first_range_m) / dr;
                        const auto j0 = static_cast<long long>(std::ceil(jc - half_width));
                        const auto j1 = static_cast<long long>(std::floor(jc + half_width));
                        const double carrier_phase = -4.0 * kPi * r / lambda;
                        for (long long j = std::max(0LL, j0); j <= j1 && j < static_cast<long long>(g.n_range); ++j)
                        {
                            const double rj = g.first_range_m + static_cast<double>(j) * dr;
                            const double u = 2.0 * (rj - r) / kSpeedOfLight;
                            acc(i, static_cast<std::size_t>(j)) +=
                                s.reflectivity * std::polar(1.0, kPi * kr * u * u + carrier_phase);
                        }
                    }
                } });
        }

        void band_limit(ComplexGrid &acc, const Anisotropy &a, const SensorParams &p)
        {
            if (const auto *d = std::get_if<DopplerBand>(&a))
            {
                fft_cols(acc, FftDirection::forward);
                for (std::size_t k = 0; k < acc.rows; ++k)
                {
                    const double f = bin_frequency(k, acc.rows, p.prf_hz);
                    if (f < d->f_lo_hz || f > d->f_hi_hz)
                        for (std::size_t c = 0; c < acc.cols; ++c)
                            acc(k, c) = 0.0;
                }
                fft_cols(acc, FftDirection::inverse);
            }
            else if (const auto *r = std::get_if<RangeBand>(&a))
            {
                fft_rows(acc, FftDirection::forward);
                for (std::size_t k = 0; k < acc.cols; ++k)
                {
                    const double f = bin_frequency(k, acc.cols, p.range_sample_rate_hz);
                    if (f < r->f_lo_hz || f > r->f_hi_hz)
                        for (std::size_t row = 0; row < acc.rows; ++row)
                            acc(row, k) = 0.0;
                }
                fft_rows(acc, FftDirection::inverse);
            }
        }
    }

    double illuminated_half_aperture(const SensorParams &params, double slant_range_m)
    {
        return 0.5 * slant_range_m * kBeamwidthFactor * params.wavelength() / params.antenna_length_m;
    }

    double aperture_time(const SensorParams &params, double slant_range_m)
    {
        if (!(params.platform_velocity_mps > 0.0))
            return 0.0;
        return 2.0 * illuminated_half_aperture(params, slant_range_m) / params.platform_velocity_mps;
    }

    RawGeometry raw_geometry(const SensorParams &params, const SceneExtent &extent)
    {
        validate_extent(extent);
        const double dr = params.range_spacing();
        const double da = params.azimuth_spacing();
        const double far = params.center_slant_range_m + 0.5 * extent.range_window_m;
        const double half_aperture = illuminated_half_aperture(params, far);
        const double migration_m = std::hypot(far, half_aperture) - far;
        const double chirp_half_m = 0.25 * kSpeedOfLight * params.pulse_duration_s;

        const auto lo = static_cast<std::size_t>(std::ceil((0.5 * extent.range_window_m + chirp_half_m) / dr)) + 2;
        const auto hi =
            static_cast<std::size_t>(std::ceil((0.5 * extent.range_window_m + chirp_half_m + migration_m) / dr)) + 2;
        const auto k = static_cast<std::size_t>(std::ceil((0.5 * extent.azimuth_window_m + half_aperture) / da)) + 2;

        RawGeometry g;
        g.n_range = lo + hi + 1;
        g.n_azimuth = 2 * k + 1;
        g.center_range = lo;
        g.center_azimuth = k;
        g.first_range_m = params.center_slant_range_m - static_cast<double>(lo) * dr;
        g.first_azimuth_m = -static_cast<double>(k) * da;
        return g;
    }

    std::array<double, 3> multipath_ranges(const MultipathTarget &t, const SensorParams &params)
    {
        const double delta = t.height_m * std::cos(params.incidence_angle_deg * kPi / 180.0);
        const double r1 = t.deck_slant_range_m;
        return {r1, r1 + delta, r1 + 2.0 * delta};
    }

    double migration_cells(const SensorParams &params, double slant_range_m)
    {
        // Displacement along track over half the aperture time; zero when the
        // platform does not move.
        const double half_track = 0.5 * params.platform_velocity_mps * aperture_time(params, slant_range_m);
        return (std::hypot(slant_range_m, half_track) - slant_range_m) / params.range_spacing();
    }

    double migration_check(std::span<const Target> targets, const SensorParams &params, const SceneExtent &)
    {
        double worst = 0.0;
        for (const auto &s : expand(targets, params))
            worst = std::max(worst, migration_cells(params, s.range_m));
        return worst;
    }

    bool inside_extent(double slant_range_m, double azimuth_m, const SensorParams &params, const SceneExtent &extent)
    {
        const double tol = 1e-9;
        return std::abs(slant_range_m - params.center_slant_range_m) <= 0.5 * extent.range_window_m + tol &&
               std::abs(azimuth_m) <= 0.5 * extent.azimuth_window_m + tol;
    }

    RawData simulate_raw(std::span<const Target> targets, const SensorParams &params, const SceneExtent &extent)
    {
        params.validate();
        validate_extent(extent);
        for (const auto &t : targets)
            if (const auto *mp = std::get_if<MultipathTarget>(&t); mp && !(mp->height_m > 0.0))
                fail("multipath target requires height_m > 0");

        const auto scatterers = expand(targets, params);
        for (const auto &s : scatterers)
        {
            if (!(s.range_m > 0.0) || !inside_extent(s.range_m, s.azimuth_m, params, extent))
                fail("target outside extent");
            validate_band(s.anisotropy, params);
        }
        const double migration = migration_check(targets, params, extent);
        if (migration > kMaxMigrationCells)
        {
            std::ostringstream os;
            os << "migration exceeds limit (" << migration << " cells > " << kMaxMigrationCells << ")";
            throw Error(ErrorKind::physics_bound, os.str());
        }

        const RawGeometry g = raw_geometry(params, extent);

        // Targets sharing a band are synthesized together and filtered once.
        std::vector<std::pair<Anisotropy, std::vector<std::size_t>>> groups;
        groups.push_back({Isotropic{}, {}});
        for (std::size_t i = 0; i < scatterers.size(); ++i)
        {
            auto it = std::find_if(groups.begin(), groups.end(),
                                   [&](const auto &grp)
                                   { return same_band(grp.first, scatterers[i].anisotropy); });
            if (it == groups.end())
                groups.push_back({scatterers[i].anisotropy, {i}});
            else
                it->second.push_back(i);
        }

        ComplexGrid total(g.n_azimuth, g.n_range);
        for (const auto &[band, members] : groups)
        {
            if (members.empty())
                continue;
            ComplexGrid acc(g.n_azimuth, g.n_range);
            synthesize(acc, scatterers, members, params, g);
            band_limit(acc, band, params);
            for (std::size_t i = 0; i < total.data.size(); ++i)
                total.data[i] += acc.data[i];
        }

        RawData raw;
        raw.data = total.to_image();
        raw.params = params;
        raw.extent = extent;
        raw.first_azimuth_m = g.first_azimuth_m;
        raw.first_range_m = g.first_range_m;
        return raw;
    }

    void add_noise(RawData &raw, double sigma, std::uint64_t seed)
    {
        if (!(sigma >= 0.0))
            fail("noise_sigma must be >= 0");
        if (sigma == 0.0)
            return;
        Rng rng(seed);
        const double s = sigma / std::sqrt(2.0);
        for (auto &x : raw.data.samples())
        {
            const double re = rng.normal();
            const double im = rng.normal();
            x += cfloat(static_cast<float>(s * re), static_cast<float>(s * im));
        }
    }

    void write_raw(const RawData &raw, const std::filesystem::path &path, const json &extra)
    {
        raw.params.validate();
        json meta = sensor_to_json(raw.params);
        meta["product"] = "raw";
        meta["azimuth_spacing_m"] = raw.params.azimuth_spacing();
        meta["range_spacing_m"] = raw.params.range_spacing();
        meta["first_azimuth_m"] = raw.first_azimuth_m;
        meta["first_range_m"] = raw.first_range_m;
        meta["range_window_m"] = raw.extent.range_window_m;
        meta["azimuth_window_m"] = raw.extent.azimuth_window_m;
        meta.update(extra);
        write_complex_product(raw.data, meta, path);
    }

    RawData read_raw(const std::filesystem::path &path)
    {
        json meta;
        RawData raw;
        raw.data = read_complex_product(path, meta);
        if (meta.value("product", "") != "raw")
            fail("'" + path.string() + "' is not a raw product");
        raw.params = sensor_from_json(meta);
        raw.params.validate();
        raw.extent.range_window_m = meta.value("range_window_m", 0.0);
        raw.extent.azimuth_window_m = meta.value("azimuth_window_m", 0.0);
        raw.first_azimuth_m = meta.value("first_azimuth_m", 0.0);
        raw.first_range_m = meta.value("first_range_m", 0.0);
        const RawGeometry g = raw_geometry(raw.params, raw.extent);
        if (g.n_azimuth != raw.data.n_azimuth() || g.n_range != raw.data.n_range() ||
            std::abs(g.first_range_m - raw.first_range_m) > 1e-6 || std::abs(g.first_azimuth_m - raw.first_azimuth_m) > 1e-6)
            fail("raw dimensions inconsistent with acquisition geometry");
        return raw;
    }
}
