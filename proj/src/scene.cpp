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

#include "sarphys/scene.hpp"

#include <fstream>

namespace sarphys::scene
{
    namespace
    {
        cdouble parse_complex(const json &j, const char *what)
        {
            if (j.is_number())
                return {j.get<double>(), 0.0};
            if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
                fail(std::string(what) + " must be a number or [re, im]");
            return {j[0].get<double>(), j[1].get<double>()};
        }

        json complex_json(cdouble c) { return json::array({c.real(), c.imag()}); }

        double number(const json &j, const char *key)
        {
            if (!j.contains(key) || !j[key].is_number())
                fail(std::string("scene: missing numeric '") + key + "'");
            return j[key].get<double>();
        }

        ScatteringMatrix parse_matrix(const json &j)
        {
            ScatteringMatrix m{};
            for (Channel c : {Channel::hh, Channel::hv, Channel::vh, Channel::vv})
            {
                const std::string key(channel_name(c));
                m[static_cast<std::size_t>(c)] = j.contains(key) ? parse_complex(j[key], key.c_str()) : cdouble(0.0);
            }
            return m;
        }

        json matrix_json(const ScatteringMatrix &m)
        {
            json j;
            for (Channel c : {Channel::hh, Channel::hv, Channel::vh, Channel::vv})
                j[std::string(channel_name(c))] = complex_json(m[static_cast<std::size_t>(c)]);
            return j;
        }

        echo::Anisotropy parse_anisotropy(const json &j)
        {
            const std::string kind = j.value("kind", "isotropic");
            if (kind == "isotropic")
                return echo::Isotropic{};
            if (kind == "doppler_band")
                return echo::DopplerBand{number(j, "f_lo_hz"), number(j, "f_hi_hz")};
            if (kind == "range_band")
                return echo::RangeBand{number(j, "f_lo_hz"), number(j, "f_hi_hz")};
            fail("scene: unknown anisotropy kind '" + kind + "'");
        }

        cdouble pick(const ScatteringMatrix &m, Channel c) { return m[static_cast<std::size_t>(c)]; }

        cdouble default_channel(cdouble refl, Channel c)
        {
            return (c == Channel::hh || c == Channel::vv) ? refl : cdouble(0.0);
        }
    }

    Channel parse_channel(std::string_view name)
    {
        if (name == "hh")
            return Channel::hh;
        if (name == "hv")
            return Channel::hv;
        if (name == "vh")
            return Channel::vh;
        if (name == "vv")
            return Channel::vv;
        fail("unknown polarization channel '" + std::string(name) + "'");
    }

    std::string_view channel_name(Channel c)
    {
        switch (c)
        {
        case Channel::hv:
            return "hv";
        case Channel::vh:
            return "vh";
        case Channel::vv:
            return "vv";
        default:
            return "hh";
        }
    }

    std::vector<echo::Target> SceneSpec::targets_for(std::optional<Channel> channel) const
    {
        std::vector<echo::Target> out;
        out.reserve(targets.size());
        for (const auto &spec : targets)
        {
            echo::Target t = spec.target;
            if (channel)
            {
                if (auto *pt = std::get_if<echo::PointTarget>(&t))
                    pt->reflectivity = spec.scattering.empty() ? default_channel(pt->reflectivity, *channel)
                                                               : pick(spec.scattering[0], *channel);
                else
                {
                    auto &mp = std::get<echo::MultipathTarget>(t);
                    for (std::size_t b = 0; b < 3; ++b)
                        mp.bounce_reflectivities[b] = spec.scattering.empty()
                                                          ? default_channel(mp.bounce_reflectivities[b], *channel)
                                                          : pick(spec.scattering[b], *channel);
                }
            }
            out.push_back(t);
        }
        return out;
    }

    SceneSpec parse_scene(const json &j)
    {
        if (!j.is_object())
            fail("scene: top level must be an object");
        SceneSpec s;
        if (!j.contains("sensor"))
            fail("scene: missing 'sensor'");
        s.sensor = sensor_from_json(j["sensor"]);
        s.sensor.validate();
        if (!j.contains("extent"))
            fail("scene: missing 'extent'");
        s.extent.range_window_m = number(j["extent"], "range_window_m");
        s.extent.azimuth_window_m = number(j["extent"], "azimuth_window_m");
        if (!(s.extent.range_window_m > 0.0) || !(s.extent.azimuth_window_m > 0.0))
            fail("scene: extent windows must be > 0");
        s.noise_sigma = j.value("noise_sigma", 0.0);
        if (!(s.noise_sigma >= 0.0))
            fail("scene: noise_sigma must be >= 0");
        s.seed = j.value("seed", std::uint64_t{0});

        for (const auto &t : j.value("targets", json::array()))
        {
            TargetSpec spec;
            const std::string type = t.value("type", "point");
            if (type == "point")
            {
                echo::PointTarget pt;
                pt.slant_range_m = number(t, "slant_range_m");
                pt.azimuth_m = number(t, "azimuth_m");
                if (t.contains("reflectivity"))
                    pt.reflectivity = parse_complex(t["reflectivity"], "reflectivity");
                if (t.contains("anisotropy"))
                    pt.anisotropy = parse_anisotropy(t["anisotropy"]);
                if (t.contains("scattering"))
                    spec.scattering.push_back(parse_matrix(t["scattering"]));
                if (!echo::inside_extent(pt.slant_range_m, pt.azimuth_m, s.sensor, s.extent))
                    fail("target outside extent");
                spec.target = pt;
            }
            else if (type == "multipath")
            {
                echo::MultipathTarget mp;
                mp.deck_slant_range_m = number(t, "deck_slant_range_m");
                mp.azimuth_m = number(t, "azimuth_m");
                mp.height_m = number(t, "height_m");
                if (!(mp.height_m > 0.0))
                    fail("scene: multipath height_m must be > 0");
                if (t.contains("bounce_reflectivities"))
                {
                    const auto &b = t["bounce_reflectivities"];
                    if (!b.is_array() || b.size() != 3)
                        fail("scene: bounce_reflectivities needs 3 entries");
                    for (std::size_t i = 0; i < 3; ++i)
                        mp.bounce_reflectivities[i] = parse_complex(b[i], "bounce_reflectivities");
                }
                if (t.contains("bounce_scattering"))
                {
                    const auto &b = t["bounce_scattering"];
                    if (!b.is_array() || b.size() != 3)
                        fail("scene: bounce_scattering needs 3 entries");
                    for (const auto &m : b)
                        spec.scattering.push_back(parse_matrix(m));
                }
                for (double r : echo::multipath_ranges(mp, s.sensor))
                    if (!echo::inside_extent(r, mp.azimuth_m, s.sensor, s.extent))
                        fail("target outside extent");
                spec.target = mp;
            }
            else
                fail("scene: unknown target type '" + type + "'");
            s.targets.push_back(std::move(spec));
        }
        return s;
    }

    SceneSpec load_scene(const std::filesystem::path &path)
    {
        std::ifstream is(path);
        if (!is)
            throw Error(ErrorKind::io, "cannot open scene file '" + path.string() + "'");
        json j;
        try
        {
            j = json::parse(is);
        }
        catch (const json::exception &e)
        {
            fail(std::string("scene: malformed JSON: ") + e.what());
        }
        return parse_scene(j);
    }

    json scene_to_json(const SceneSpec &s)
    {
        json j;
        j["sensor"] = sensor_to_json(s.sensor);
        j["extent"] = {{"range_window_m", s.extent.range_window_m}, {"azimuth_window_m", s.extent.azimuth_window_m}};
        j["noise_sigma"] = s.noise_sigma;
        j["seed"] = s.seed;
        j["targets"] = json::array();
        for (const auto &spec : s.targets)
        {
            json t;
            if (const auto *pt = std::get_if<echo::PointTarget>(&spec.target))
            {
                t["type"] = "point";
                t["slant_range_m"] = pt->slant_range_m;
                t["azimuth_m"] = pt->azimuth_m;
                t["reflectivity"] = complex_json(pt->reflectivity);
                if (const auto *d = std::get_if<echo::DopplerBand>(&pt->anisotropy))
                    t["anisotropy"] = {{"kind", "doppler_band"}, {"f_lo_hz", d->f_lo_hz}, {"f_hi_hz", d->f_hi_hz}};
                else if (const auto *r = std::get_if<echo::RangeBand>(&pt->anisotropy))
                    t["anisotropy"] = {{"kind", "range_band"}, {"f_lo_hz", r->f_lo_hz}, {"f_hi_hz", r->f_hi_hz}};
                if (!spec.scattering.empty())
                    t["scattering"] = matrix_json(spec.scattering[0]);
            }
            else
            {
                const auto &mp = std::get<echo::MultipathTarget>(spec.target);
                t["type"] = "multipath";
                t["deck_slant_range_m"] = mp.deck_slant_range_m;
                t["azimuth_m"] = mp.azimuth_m;
                t["height_m"] = mp.height_m;
                t["bounce_reflectivities"] = json::array();
                for (const auto &b : mp.bounce_reflectivities)
                    t["bounce_reflectivities"].push_back(complex_json(b));
                if (!spec.scattering.empty())
                {
                    t["bounce_scattering"] = json::array();
                    for (const auto &m : spec.scattering)
                        t["bounce_scattering"].push_back(matrix_json(m));
                }
            }
            j["targets"].push_back(t);
        }
        return j;
    }
}
