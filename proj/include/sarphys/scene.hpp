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

#ifndef SARPHYS_SCENE_HPP
#define SARPHYS_SCENE_HPP

#include "sarphys/echo_sim.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sarphys::scene
{
    enum class Channel
    {
        hh,
        hv,
        vh,
        vv
    };

    Channel parse_channel(std::string_view name);
    std::string_view channel_name(Channel c);

    // Scattering matrix entries indexed by Channel.
    using ScatteringMatrix = std::array<cdouble, 4>;

    struct TargetSpec
    {
        echo::Target target;
        // Point target: one matrix. Multipath: one per bounce.
        std::vector<ScatteringMatrix> scattering;
    };

    struct SceneSpec
    {
        SensorParams sensor;
        SceneExtent extent;
        std::vector<TargetSpec> targets;
        double noise_sigma = 0.0;
        std::uint64_t seed = 0;

        // Targets with reflectivities taken from one polarimetric channel.
        // Without a scattering matrix a target is treated as a trihedral
        // (HH = VV = reflectivity, HV = VH = 0).
        std::vector<echo::Target> targets_for(std::optional<Channel> channel = std::nullopt) const;
    };

    // Parses and re-validates every embedded invariant.
    SceneSpec parse_scene(const json &j);
    SceneSpec load_scene(const std::filesystem::path &path);
    json scene_to_json(const SceneSpec &s);
}

#endif
